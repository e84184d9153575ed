//! JSON file formats for matrices, vectors, topologies, and generator
//! presentations of subspaces. Scalars serialize as numbers with the
//! string "bottom" for the zero element; see [`crate::semifield`].

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::function_space::{FiniteTopology, MeetSubspace};
use crate::semifield::Semifield;
use crate::semimodule::{Matrix, Vector};

#[derive(Serialize, Deserialize)]
struct MatrixDoc<K> {
    semifield: String,
    rows: Vec<Vec<K>>,
}

#[derive(Serialize, Deserialize)]
struct VectorDoc<K> {
    semifield: String,
    entries: Vec<K>,
}

#[derive(Serialize, Deserialize)]
struct TopologyDoc {
    points: usize,
    closed_sets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceDoc<K> {
    semifield: String,
    generators: Vec<Vec<K>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology: Option<TopologyDoc>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn check_name<K: Semifield>(found: &str) -> Result<(), Error> {
    if found != K::NAME {
        return Err(Error::Parse(format!(
            "file declares semifield {found:?}, expected {:?}",
            K::NAME
        )));
    }
    Ok(())
}

pub fn parse_matrix<K: Semifield>(json: &str) -> Result<Matrix<K>, Error> {
    let doc: MatrixDoc<K> = serde_json::from_str(json).map_err(parse_err)?;
    check_name::<K>(&doc.semifield)?;
    Matrix::from_rows(doc.rows)
}

pub fn matrix_to_json<K: Semifield>(m: &Matrix<K>) -> String {
    let doc = MatrixDoc {
        semifield: K::NAME.to_string(),
        rows: m.row_vectors(),
    };
    serde_json::to_string(&doc).expect("matrix serialization cannot fail")
}

pub fn parse_vector<K: Semifield>(json: &str) -> Result<Vector<K>, Error> {
    let doc: VectorDoc<K> = serde_json::from_str(json).map_err(parse_err)?;
    check_name::<K>(&doc.semifield)?;
    if doc.entries.is_empty() {
        return Err(Error::Parse("vector needs at least one entry".into()));
    }
    Ok(Vector::from_entries(doc.entries))
}

pub fn vector_to_json<K: Semifield>(v: &Vector<K>) -> String {
    let doc = VectorDoc {
        semifield: K::NAME.to_string(),
        entries: v.entries().to_vec(),
    };
    serde_json::to_string(&doc).expect("vector serialization cannot fail")
}

pub fn parse_topology(json: &str) -> Result<FiniteTopology, Error> {
    let doc: TopologyDoc = serde_json::from_str(json).map_err(parse_err)?;
    FiniteTopology::new(doc.points, &doc.closed_sets)
}

pub fn topology_to_json(t: &FiniteTopology) -> String {
    let doc = TopologyDoc {
        points: t.points(),
        closed_sets: t.closed_sets(),
    };
    serde_json::to_string(&doc).expect("topology serialization cannot fail")
}

/// Reads a generator presentation; without an explicit topology the
/// ambient space is discrete.
pub fn parse_subspace<K: Semifield>(json: &str) -> Result<MeetSubspace<K>, Error> {
    let doc: SubspaceDoc<K> = serde_json::from_str(json).map_err(parse_err)?;
    check_name::<K>(&doc.semifield)?;
    if doc.generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let dim = doc.generators[0].len();
    let topology = match doc.topology {
        Some(t) => FiniteTopology::new(t.points, &t.closed_sets)?,
        None => FiniteTopology::discrete(dim)?,
    };
    let generators = doc
        .generators
        .into_iter()
        .map(|g| {
            if g.is_empty() {
                Err(Error::Parse("generator needs at least one entry".into()))
            } else {
                Ok(Vector::from_entries(g))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    MeetSubspace::new(topology, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{MaxTimes, RMax};

    #[test]
    fn matrix_roundtrip_with_tokens() {
        let json = r#"{"semifield":"rmax","rows":[[0,1],["bottom",2]]}"#;
        let m: Matrix<RMax> = parse_matrix(json).unwrap();
        assert_eq!(m.get(1, 0), RMax::bottom());
        assert_eq!(m.get(0, 1), RMax::finite(1.0));
        let out = matrix_to_json(&m);
        assert_eq!(out, r#"{"semifield":"rmax","rows":[[0.0,1.0],["bottom",2.0]]}"#);
        let back: Matrix<RMax> = parse_matrix(&out).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn legacy_bottom_token() {
        let json = r#"{"semifield":"rmax","rows":[["-inf",0],[1,"-inf"]]}"#;
        let m: Matrix<RMax> = parse_matrix(json).unwrap();
        assert!(m.get(0, 0).is_zero());
        // writers always emit the canonical token
        assert!(matrix_to_json(&m).contains("\"bottom\""));
    }

    #[test]
    fn ragged_rows_rejected() {
        let json = r#"{"semifield":"rmax","rows":[[0,1],[2]]}"#;
        assert!(matches!(
            parse_matrix::<RMax>(json),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn semifield_name_must_match() {
        let json = r#"{"semifield":"maxtimes","rows":[[1]]}"#;
        assert!(parse_matrix::<RMax>(json).is_err());
        let m: Matrix<MaxTimes> = parse_matrix(json).unwrap();
        assert_eq!(m.get(0, 0), MaxTimes::positive(1.0));
    }

    #[test]
    fn vector_and_topology_roundtrip() {
        let v: Vector<RMax> = parse_vector(r#"{"semifield":"rmax","entries":[3,"bottom"]}"#).unwrap();
        assert_eq!(v.len(), 2);
        let json = vector_to_json(&v);
        assert_eq!(parse_vector::<RMax>(&json).unwrap(), v);

        let t = parse_topology(r#"{"points":2,"closed_sets":[[],[0],[0,1]]}"#).unwrap();
        let json = topology_to_json(&t);
        assert_eq!(parse_topology(&json).unwrap(), t);
        assert!(parse_topology(r#"{"points":2,"closed_sets":[[],[0]]}"#).is_err());
    }

    #[test]
    fn subspace_parsing() {
        let w: MeetSubspace<RMax> =
            parse_subspace(r#"{"semifield":"rmax","generators":[[0,0],[0,-1]]}"#).unwrap();
        assert_eq!(w.generators().len(), 2);
        assert_eq!(w.topology().points(), 2);

        let with_topology = r#"{"semifield":"rmax","generators":[[0,0]],"topology":{"points":2,"closed_sets":[[],[0],[0,1]]}}"#;
        let w: MeetSubspace<RMax> = parse_subspace(with_topology).unwrap();
        assert_eq!(w.topology().closed_sets().len(), 3);

        assert!(matches!(
            parse_subspace::<RMax>(r#"{"semifield":"rmax","generators":[]}"#),
            Err(Error::NoGenerators)
        ));
        assert!(matches!(
            parse_subspace::<RMax>(r#"{"semifield":"rmax","generators":[[0,"bottom"]]}"#),
            Err(Error::NotArchimedean(1))
        ));
    }
}
