//! JSON input documents: matroid specifications and explicit building sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::named;
use crate::subset::{GroundSubset, MAX_ELEMENTS};

/// A matroid description as accepted on the command line and from Python.
///
/// ```json
/// {"type": "bases", "n": 3, "bases": [[0, 1], [0, 2], [1, 2]]}
/// {"type": "uniform", "r": 2, "n": 3}
/// {"type": "graph", "edges": [[0, 1], [1, 2], [0, 2]]}
/// {"type": "named", "name": "fano"}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Bases { n: usize, bases: Vec<Vec<usize>> },
    Uniform { r: usize, n: usize },
    Graph { edges: Vec<(usize, usize)> },
    Named { name: String },
}

impl MatroidSpec {
    pub fn parse(text: &str) -> Result<MatroidSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matroid spec: {e}")))
    }

    pub fn from_json(v: &Value) -> Result<MatroidSpec> {
        MatroidSpec::deserialize(v).map_err(|e| Error::Parse(format!("matroid spec: {e}")))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("spec serializes")
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Bases { n, bases } => {
                if *n > MAX_ELEMENTS {
                    return Err(Error::TooManyElements {
                        n: *n,
                        max: MAX_ELEMENTS,
                    });
                }
                let mut sets = Vec::with_capacity(bases.len());
                for b in bases {
                    if let Some(&e) = b.iter().find(|&&e| e >= *n) {
                        return Err(Error::ElementOutOfRange { element: e, n: *n });
                    }
                    let s = GroundSubset::from_elements(b.iter().copied());
                    if s.len() != b.len() {
                        return Err(Error::Parse(format!("basis {b:?} repeats an element")));
                    }
                    sets.push(s);
                }
                Matroid::from_bases(*n, sets)
            }
            MatroidSpec::Uniform { r, n } => {
                if r > n {
                    return Err(Error::Parse(format!(
                        "uniform matroid needs r ≤ n, got r = {r}, n = {n}"
                    )));
                }
                Matroid::uniform(*r, *n)
            }
            MatroidSpec::Graph { edges } => Matroid::graphic(edges),
            MatroidSpec::Named { name } => named::by_name(name),
        }
    }

    /// The explicit basis form of a matroid.
    pub fn of_matroid(m: &Matroid) -> MatroidSpec {
        MatroidSpec::Bases {
            n: m.n(),
            bases: m.bases().iter().map(|b| b.to_vec()).collect(),
        }
    }
}

/// Parses a building set given as a JSON array of flats, each a list of elements.
pub fn parse_building_set(text: &str, lattice: Arc<FlatLattice>) -> Result<BuildingSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("building set: {e}")))?;
    building_set_from_json(&v, lattice)
}

pub fn building_set_from_json(v: &Value, lattice: Arc<FlatLattice>) -> Result<BuildingSet> {
    let lists: Vec<Vec<usize>> = Vec::deserialize(v)
        .map_err(|e| Error::Parse(format!("building set must be an array of element lists: {e}")))?;
    let n = lattice.matroid().n();
    let mut flats = Vec::with_capacity(lists.len());
    for list in lists {
        if let Some(&e) = list.iter().find(|&&e| e >= n) {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
        flats.push(GroundSubset::from_elements(list));
    }
    BuildingSet::from_flats(lattice, &flats)
}

pub fn building_set_to_json(g: &BuildingSet) -> Value {
    Value::from(
        g.member_flats()
            .into_iter()
            .map(|f| Value::from(f.to_vec()))
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_variants() {
        let u = MatroidSpec::parse(r#"{"type":"uniform","r":2,"n":3}"#).unwrap();
        assert_eq!(u.to_matroid().unwrap(), Matroid::uniform(2, 3).unwrap());
        let b = MatroidSpec::parse(r#"{"type":"bases","n":3,"bases":[[0,1],[0,2],[1,2]]}"#).unwrap();
        assert_eq!(b.to_matroid().unwrap(), Matroid::uniform(2, 3).unwrap());
        let g = MatroidSpec::parse(r#"{"type":"graph","edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(g.to_matroid().unwrap(), Matroid::uniform(2, 3).unwrap());
        let f = MatroidSpec::parse(r#"{"type":"named","name":"fano"}"#).unwrap();
        assert_eq!(f.to_matroid().unwrap().rank(), 3);
        let round = MatroidSpec::from_json(&b.to_json()).unwrap();
        assert_eq!(round, b);
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(MatroidSpec::parse("{}"), Err(Error::Parse(_))));
        assert!(matches!(
            MatroidSpec::parse(r#"{"type":"bases","n":2,"bases":[[0,5]]}"#)
                .unwrap()
                .to_matroid(),
            Err(Error::ElementOutOfRange { element: 5, n: 2 })
        ));
        assert!(matches!(
            MatroidSpec::parse(r#"{"type":"bases","n":4,"bases":[[0,1],[2,3]]}"#)
                .unwrap()
                .to_matroid(),
            Err(Error::BasisExchange { .. })
        ));
        assert!(MatroidSpec::parse(r#"{"type":"bases","n":0,"bases":[[]]}"#)
            .unwrap()
            .to_matroid()
            .is_err());
    }

    #[test]
    fn building_set_files() {
        let l = Arc::new(FlatLattice::build(&Matroid::uniform(2, 2).unwrap()));
        let g = parse_building_set("[[0],[1]]", l.clone()).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(building_set_to_json(&g), serde_json::json!([[0], [1]]));
        assert!(matches!(
            parse_building_set("[[0,1]]", l.clone()),
            Err(Error::NotBuildingSet(_))
        ));
        let l3 = Arc::new(FlatLattice::build(&Matroid::uniform(1, 2).unwrap()));
        assert!(matches!(parse_building_set("[[0]]", l3), Err(Error::NotAFlat(_))));
    }
}
