//! JSON documents for matroids, codes, construction graphs and atom lists.
//!
//! Writers always emit the canonical form (sorted families, compact JSON,
//! trailing newline), so reading a canonical document and writing it back
//! gives identical bytes. Readers report schema problems with a field path
//! such as `data[1].rank`.

use serde::de::DeserializeOwned;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::code::BlockCode;
use crate::constructions::{AtomSpec, ConstructionGraph};
use crate::matroid::{CyclicFlat, CyclicFlatLattice, Matroid, RankTable, Representation, SubsetFamily};
use crate::subset::{Subset, MAX_GROUND};
use crate::Error;

/// Version of the document formats below.
pub const SCHEMA_VERSION: &str = "1";

/// Writes a list of subsets as arrays of sorted element indices.
pub fn ser_subsets<S: Serializer>(sets: &[Subset], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(sets.len()))?;
    for x in sets {
        seq.serialize_element(&x.to_vec())?;
    }
    seq.end()
}

/// Writes one subset as an array of sorted element indices.
pub fn ser_subset<S: Serializer>(set: &Subset, s: S) -> Result<S::Ok, S::Error> {
    set.to_vec().serialize(s)
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn from_value<T: DeserializeOwned>(value: serde_json::Value, prefix: &str) -> Result<T, Error> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match inner.as_str() {
            "." | "" => prefix.to_string(),
            p if p.starts_with('[') || prefix.is_empty() => format!("{prefix}{p}"),
            p => format!("{prefix}.{p}"),
        };
        schema(path, e.into_inner().to_string())
    })
}

fn parse_value(text: &str) -> Result<serde_json::Value, Error> {
    serde_json::from_str(text).map_err(|e| schema("", e.to_string()))
}

fn to_subset(elems: &[usize], n: usize, path: &str) -> Result<Subset, Error> {
    if let Some(&x) = elems.iter().find(|&&x| x >= n) {
        return Err(schema(path, format!("element {x} outside ground set of size {n}")));
    }
    let set = Subset::from_elements(elems.iter().copied());
    if set.len() != elems.len() {
        return Err(schema(path, "repeated element"));
    }
    Ok(set)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatroid {
    n: usize,
    repr: String,
    data: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatEntry {
    set: Vec<usize>,
    rank: usize,
}

#[derive(Serialize)]
struct MatroidOut<'a, T: Serialize> {
    n: usize,
    repr: &'a str,
    data: T,
}

/// Reads a matroid document `{"n", "repr", "data"}` and validates the axioms
/// of its representation.
pub fn read_matroid(text: &str) -> Result<Matroid, Error> {
    let raw: RawMatroid = from_value(parse_value(text)?, "")?;
    let n = raw.n;
    if n > MAX_GROUND {
        return Err(Error::TooLarge { n, limit: MAX_GROUND });
    }
    let repr = match raw.repr.as_str() {
        "independent_sets" => {
            let sets: Vec<Vec<usize>> = from_value(raw.data, "data")?;
            let mut family = Vec::with_capacity(sets.len());
            for (i, s) in sets.iter().enumerate() {
                family.push(to_subset(s, n, &format!("data[{i}]"))?);
            }
            Representation::IndependentSets(SubsetFamily::new(family))
        }
        "rank_table" => {
            let ranks: Vec<u8> = from_value(raw.data, "data")?;
            Representation::Ranks(RankTable::new(n, ranks)?)
        }
        "cyclic_flats" => {
            let entries: Vec<FlatEntry> = from_value(raw.data, "data")?;
            let mut flats = Vec::with_capacity(entries.len());
            for (i, f) in entries.iter().enumerate() {
                flats.push(CyclicFlat {
                    set: to_subset(&f.set, n, &format!("data[{i}].set"))?,
                    rank: f.rank,
                });
            }
            Representation::CyclicFlats(CyclicFlatLattice::new(n, flats))
        }
        other => {
            return Err(schema(
                "repr",
                format!("unknown representation {other:?}, expected independent_sets, rank_table or cyclic_flats"),
            ))
        }
    };
    Matroid::from_representation(n, repr)
}

/// Canonical matroid document in the matroid's own representation.
pub fn write_matroid(m: &Matroid) -> String {
    let n = m.n();
    let body = match m.representation() {
        Representation::IndependentSets(f) => serde_json::to_string(&MatroidOut {
            n,
            repr: "independent_sets",
            data: f.iter().map(Subset::to_vec).collect::<Vec<_>>(),
        }),
        Representation::Ranks(t) => serde_json::to_string(&MatroidOut {
            n,
            repr: "rank_table",
            data: t.as_slice(),
        }),
        Representation::CyclicFlats(l) => serde_json::to_string(&MatroidOut {
            n,
            repr: "cyclic_flats",
            data: l
                .flats()
                .iter()
                .map(|f| FlatEntry {
                    set: f.set.to_vec(),
                    rank: f.rank,
                })
                .collect::<Vec<_>>(),
        }),
    };
    body.expect("matroid documents always serialize") + "\n"
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    s: usize,
    n: usize,
    codewords: Vec<Vec<u32>>,
}

/// Reads a code document `{"s", "n", "codewords"}`.
pub fn read_code(text: &str) -> Result<BlockCode, Error> {
    let doc: CodeDoc = from_value(parse_value(text)?, "")?;
    BlockCode::new(doc.s, doc.n, doc.codewords)
}

/// Canonical code document, codewords in lexicographic order.
pub fn write_code(code: &BlockCode) -> String {
    let doc = CodeDoc {
        s: code.alphabet_size(),
        n: code.length(),
        codewords: code.codewords().cloned().collect(),
    };
    serde_json::to_string(&doc).unwrap() + "\n"
}

/// Reads a construction graph `{"m", "edges", "alpha", "beta", "k", "r", "delta"}`.
pub fn read_graph(text: &str) -> Result<ConstructionGraph, Error> {
    from_value(parse_value(text)?, "")
}

pub fn write_graph(g: &ConstructionGraph) -> String {
    serde_json::to_string(g).unwrap() + "\n"
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomsDoc {
    n: usize,
    k: usize,
    atoms: Vec<FlatEntry>,
}

/// An atom list `{"n", "k", "atoms": [{"set", "rank"}]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomsInput {
    pub n: usize,
    pub k: usize,
    pub atoms: Vec<AtomSpec>,
}

pub fn read_atoms(text: &str) -> Result<AtomsInput, Error> {
    let doc: AtomsDoc = from_value(parse_value(text)?, "")?;
    if doc.n > MAX_GROUND {
        return Err(Error::TooLarge {
            n: doc.n,
            limit: MAX_GROUND,
        });
    }
    let mut atoms = Vec::with_capacity(doc.atoms.len());
    for (i, a) in doc.atoms.iter().enumerate() {
        atoms.push(AtomSpec::new(to_subset(&a.set, doc.n, &format!("atoms[{i}].set"))?, a.rank));
    }
    Ok(AtomsInput {
        n: doc.n,
        k: doc.k,
        atoms,
    })
}

pub fn write_atoms(input: &AtomsInput) -> String {
    let doc = AtomsDoc {
        n: input.n,
        k: input.k,
        atoms: input
            .atoms
            .iter()
            .map(|a| FlatEntry {
                set: a.set.to_vec(),
                rank: a.rank,
            })
            .collect(),
    };
    serde_json::to_string(&doc).unwrap() + "\n"
}

/// Pretty JSON for reports.
pub fn write_report<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_round_trip_is_byte_identical() {
        let text = write_matroid(&Matroid::uniform(4, 2).unwrap());
        assert_eq!(
            text,
            "{\"n\":4,\"repr\":\"cyclic_flats\",\"data\":[{\"set\":[],\"rank\":0},{\"set\":[0,1,2,3],\"rank\":2}]}\n"
        );
        assert_eq!(write_matroid(&read_matroid(&text).unwrap()), text);
        let table = Matroid::uniform(4, 2).unwrap().to_rank_table_repr();
        let text = write_matroid(&table);
        assert_eq!(write_matroid(&read_matroid(&text).unwrap()), text);
        let ind = table.to_independent_sets_repr();
        let text = write_matroid(&ind);
        assert_eq!(write_matroid(&read_matroid(&text).unwrap()), text);
    }

    #[test]
    fn canonical_order_on_write() {
        let text = r#"{"n":4,"repr":"cyclic_flats","data":[{"set":[3,1,0,2],"rank":2},{"set":[],"rank":0}]}"#;
        let out = write_matroid(&read_matroid(text).unwrap());
        assert!(out.starts_with("{\"n\":4,\"repr\":\"cyclic_flats\",\"data\":[{\"set\":[],"));
    }

    #[test]
    fn schema_error_paths() {
        let text = r#"{"n":4,"repr":"cyclic_flats","data":[{"set":[],"rank":0},{"set":[0,1,2,3],"rank":"two"}]}"#;
        match read_matroid(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "data[1].rank"),
            other => panic!("{other:?}"),
        }
        let text = r#"{"n":4,"repr":"cyclic_flats","data":[{"set":[],"rank":0},{"set":[0,9],"rank":1}]}"#;
        match read_matroid(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "data[1].set"),
            other => panic!("{other:?}"),
        }
        match read_matroid(r#"{"n":4,"repr":"bases","data":[]}"#) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "repr"),
            other => panic!("{other:?}"),
        }
        match read_matroid(r#"{"n":"four","repr":"rank_table","data":[]}"#) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "n"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_matroid("{"), Err(Error::Schema { .. })));
    }

    #[test]
    fn invalid_matroid_document() {
        let text = r#"{"n":2,"repr":"rank_table","data":[0,1,1,3]}"#;
        assert!(matches!(read_matroid(text), Err(Error::InvalidMatroid(_))));
    }

    #[test]
    fn code_and_graph_documents() {
        let code = BlockCode::linear(2, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let text = write_code(&code);
        assert_eq!(read_code(&text).unwrap(), code);
        let g = ConstructionGraph::edgeless(vec![0, 0], vec![1, 0], 4, 2, 2);
        let text = write_graph(&g);
        assert_eq!(read_graph(&text).unwrap(), g);
        let atoms = AtomsInput {
            n: 6,
            k: 4,
            atoms: vec![
                AtomSpec::new(Subset::range(0, 3), 2),
                AtomSpec::new(Subset::range(3, 6), 2),
            ],
        };
        assert_eq!(read_atoms(&write_atoms(&atoms)).unwrap(), atoms);
    }
}
