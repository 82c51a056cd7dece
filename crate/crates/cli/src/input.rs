use std::path::Path;

use binedge_core::algebra::{parse_monomial, MonomialIdeal, VarNames};
use binedge_core::families::{fixtures, recognize, Family, GraphRecipe};
use binedge_core::graph::Graph;
use serde::Deserialize;
use serde_json::Value;

use crate::report::{CliError, InputHash};

/// A named, hashed input document.
pub struct Loaded {
    pub hash: InputHash,
    pub value: Value,
}

pub fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Loaded { hash: InputHash::of(name, &bytes), value })
}

pub fn load_fixture(name: &str) -> Result<Loaded, CliError> {
    let f = fixtures::get(name)
        .ok_or_else(|| CliError::Invalid(format!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", "))))?;
    let value = serde_json::to_value(&f).expect("fixtures serialize");
    let bytes = serde_json::to_vec(&value).expect("fixtures serialize");
    Ok(Loaded { hash: InputHash::of(format!("fixture:{name}"), &bytes), value })
}

/// A recipe document, or any object carrying one under `"recipe"`.
pub fn recipe_of(v: &Value) -> Result<GraphRecipe, CliError> {
    let inner = v.get("recipe").unwrap_or(v);
    let recipe = GraphRecipe::deserialize(inner).map_err(CliError::invalid)?;
    recipe.validate().map_err(CliError::invalid)?;
    Ok(recipe)
}

/// A graph document `{"n", "edges"}`, or any object carrying one under
/// `"graph"`.
pub fn graph_of(v: &Value) -> Result<Graph, CliError> {
    let inner = v.get("graph").unwrap_or(v);
    Graph::deserialize(inner).map_err(CliError::invalid)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    variables: Vec<String>,
    generators: Vec<String>,
}

pub fn ideal_of(v: &Value) -> Result<(MonomialIdeal, VarNames), CliError> {
    let raw = IdealJson::deserialize(v).map_err(CliError::invalid)?;
    if raw.variables.is_empty() {
        return Err(CliError::Invalid("ideal has no variables".into()));
    }
    let names = VarNames::Custom(raw.variables);
    let gens = raw.generators.iter().map(|s| parse_monomial(s, &names)).collect::<Result<Vec<_>, _>>().map_err(CliError::invalid)?;
    Ok((MonomialIdeal::new(names.nvars(), gens), names))
}

/// Recipe for a family: taken directly when the document has one, otherwise
/// recovered from the graph by recognition.
pub fn family_recipe(v: &Value, family: Family) -> Result<GraphRecipe, CliError> {
    if v.get("recipe").is_some() || v.get("path_len").is_some() {
        let r = recipe_of(v)?;
        r.validate_for(family).map_err(CliError::invalid)?;
        return Ok(r);
    }
    let g = graph_of(v)?;
    recognize(&g, family).map(|rec| rec.recipe).ok_or_else(|| CliError::Invalid(format!("graph is not a {} graph", family.name())))
}

/// The graph of a document: a recipe is built and read in its family
/// labeling.
pub fn labeled_graph_of(v: &Value) -> Result<Graph, CliError> {
    if v.get("graph").is_some() || v.get("edges").is_some() {
        return graph_of(v);
    }
    Ok(recipe_of(v)?.build().map_err(CliError::invalid)?.labeled_graph())
}
