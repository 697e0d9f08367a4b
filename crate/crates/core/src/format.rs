//! JSON instance files and the `n m` edge-list format.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Color, ColorKind, ColorTable, CostSpec, Instance, Pebble, Problem};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub graph: GraphFile,
    #[serde(default)]
    pub planar: bool,
    pub colors: Vec<ColorFile>,
    pub pebbles: Vec<PebbleFile>,
    pub problem: ProblemFile,
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ColorFile {
    pub name: String,
    pub kind: KindFile,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum KindFile {
    Main,
    Facility,
    Obnoxious,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PebbleFile {
    pub id: usize,
    pub color: String,
    pub at: usize,
    pub cost: CostFile,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CostFile {
    Distance {},
    Steps { max: u32 },
    Moved {},
    Table { values: Vec<Option<u64>> },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub name: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl From<KindFile> for ColorKind {
    fn from(k: KindFile) -> ColorKind {
        match k {
            KindFile::Main => ColorKind::Main,
            KindFile::Facility => ColorKind::Facility,
            KindFile::Obnoxious => ColorKind::Obnoxious,
        }
    }
}

impl From<ColorKind> for KindFile {
    fn from(k: ColorKind) -> KindFile {
        match k {
            ColorKind::Main => KindFile::Main,
            ColorKind::Facility => KindFile::Facility,
            ColorKind::Obnoxious => KindFile::Obnoxious,
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let edges: Vec<(usize, usize)> = self.graph.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_edges(self.graph.n, &edges)
            .map_err(|e| Error::InvalidInstance(format!("graph.edges: {e}")))?;
        let colors = ColorTable::new(
            self.colors.iter().map(|c| Color { name: c.name.clone(), kind: c.kind.into() }).collect(),
        )?;
        let mut pebbles = Vec::with_capacity(self.pebbles.len());
        for (i, p) in self.pebbles.into_iter().enumerate() {
            let color = colors
                .index_of(&p.color)
                .ok_or_else(|| Error::InvalidInstance(format!("pebbles[{i}].color: unknown color {:?}", p.color)))?;
            let cost = match p.cost {
                CostFile::Distance {} => CostSpec::Distance,
                CostFile::Steps { max } => CostSpec::Steps(max),
                CostFile::Moved {} => CostSpec::Moved,
                CostFile::Table { values } => {
                    CostSpec::Table(values.into_iter().map(|v| v.map_or(Cost::INF, Cost::new)).collect())
                }
            };
            pebbles.push(Pebble { id: p.id, color, at: p.at, cost });
        }
        let problem = Problem { name: self.problem.name, params: self.problem.params };
        Instance::new(graph, colors, pebbles, self.l, self.budget, problem, self.planar)
    }

    pub fn from_instance(inst: &Instance) -> InstanceFile {
        InstanceFile {
            graph: GraphFile { n: inst.n(), edges: inst.graph.edges().into_iter().map(|(u, v)| [u, v]).collect() },
            planar: inst.planar,
            colors: inst
                .colors
                .colors()
                .iter()
                .map(|c| ColorFile { name: c.name.clone(), kind: c.kind.into() })
                .collect(),
            pebbles: inst
                .pebbles
                .iter()
                .map(|p| PebbleFile {
                    id: p.id,
                    color: inst.colors.get(p.color).name.clone(),
                    at: p.at,
                    cost: match &p.cost {
                        CostSpec::Distance => CostFile::Distance {},
                        CostSpec::Steps(d) => CostFile::Steps { max: *d },
                        CostSpec::Moved => CostFile::Moved {},
                        CostSpec::Table(vs) => CostFile::Table { values: vs.iter().map(|c| c.finite()).collect() },
                    },
                })
                .collect(),
            problem: ProblemFile { name: inst.problem.name.clone(), params: inst.problem.params.clone() },
            l: inst.l,
            budget: inst.budget,
        }
    }
}

/// Parses an instance from JSON text; errors name the offending field.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;
    file.into_instance()
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

/// Reads `n m` followed by `m` lines of `u v`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut nums = Vec::new();
    for tok in text.split_whitespace() {
        nums.push(tok.parse::<usize>().map_err(|_| Error::InvalidGraph(format!("not an integer: {tok:?}")))?);
    }
    if nums.len() < 2 {
        return Err(Error::InvalidGraph("missing `n m` header".into()));
    }
    let (n, m) = (nums[0], nums[1]);
    if nums.len() != 2 + 2 * m {
        return Err(Error::InvalidGraph(format!("header promises {m} edges, found {} numbers", nums.len() - 2)));
    }
    let edges: Vec<(usize, usize)> = nums[2..].chunks(2).map(|c| (c[0], c[1])).collect();
    Graph::from_edges(n, &edges)
}

pub fn edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const P5: &str = r#"{"graph":{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]]},
        "colors":[{"name":"red","kind":"main"}],
        "pebbles":[{"id":0,"color":"red","at":0,"cost":{"kind":"distance"}},
                   {"id":1,"color":"red","at":2,"cost":{"kind":"steps","max":1}},
                   {"id":2,"color":"red","at":4,"cost":{"kind":"table","values":[1,null,0,0,0]}}],
        "problem":{"name":"connectivity","params":{"collocated":true}},"l":3}"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = parse_instance(P5).unwrap();
        assert_eq!(inst.cost(2, 1), Cost::INF);
        assert_eq!(inst.cost(1, 3), Cost::ZERO);
        let once = instance_to_json(&inst);
        assert_eq!(instance_to_json(&parse_instance(&once).unwrap()), once);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = P5.replace("\"l\":3", "\"l\":3,\"extra\":1");
        let err = parse_instance(&bad).unwrap_err().to_string();
        assert!(err.contains("extra"), "{err}");
        let bad = P5.replace("\"kind\":\"distance\"", "\"kind\":\"distance\",\"max\":2");
        assert!(parse_instance(&bad).is_err());
    }

    #[test]
    fn cap_enforced() {
        let bad = P5.replace("[1,null,0,0,0]", "[1099511627777,null,0,0,0]");
        let err = parse_instance(&bad).unwrap_err().to_string();
        assert!(err.contains("pebbles[2]"), "{err}");
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(parse_edge_list(&edge_list(&g)).unwrap(), g);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
    }
}
