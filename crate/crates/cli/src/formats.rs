//! File formats: support text, diagram/graph/orbifold JSON.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use singlink::diagram::newton_boundary;
use singlink::resgraph::{OrbifoldDiagram, ResolutionGraph};
use singlink::{IVec3, NewtonDiagram, Rat};

/// Arbitrary-size integer written as a plain JSON number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Big(pub BigInt);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map(Big).map_err(|_| D::Error::custom(format!("{n} is not an integer")))
    }
}

impl From<&BigInt> for Big {
    fn from(v: &BigInt) -> Self {
        Big(v.clone())
    }
}

fn triple(v: &IVec3) -> [Big; 3] {
    [Big(v.x.clone()), Big(v.y.clone()), Big(v.z.clone())]
}

fn vec3(t: &[Big; 3]) -> IVec3 {
    IVec3::from_big(t[0].0.clone(), t[1].0.clone(), t[2].0.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub vertices: Vec<[Big; 3]>,
    pub normal: [Big; 3],
    pub m: Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub ends: [[Big; 3]; 2],
    pub det: Big,
    pub mult: Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub vertices: Vec<[Big; 3]>,
    #[serde(default)]
    pub faces: Vec<FaceJson>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
}

impl DiagramJson {
    pub fn from_diagram(g: &NewtonDiagram) -> Self {
        DiagramJson {
            vertices: g.vertices.iter().map(triple).collect(),
            faces: g
                .compact_faces()
                .map(|(_, f)| FaceJson {
                    vertices: f.polygon.vertices.iter().map(triple).collect(),
                    normal: triple(&f.normal),
                    m: Big(f.value.clone()),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    ends: [triple(&e.ends[0]), triple(&e.ends[1])],
                    det: Big(e.det.clone()),
                    mult: Big(e.mult.clone()),
                })
                .collect(),
        }
    }

    /// Rebuild the diagram from its vertices; listed faces and edges must agree with it.
    pub fn to_diagram(&self) -> Result<NewtonDiagram> {
        let pts: Vec<IVec3> = self.vertices.iter().map(vec3).collect();
        check_support(&pts)?;
        let g = newton_boundary(&pts);
        if !self.faces.is_empty() || !self.edges.is_empty() {
            let rebuilt = DiagramJson::from_diagram(&g);
            if rebuilt.faces != self.faces || rebuilt.edges != self.edges {
                bail!("the listed faces or edges do not match the Newton boundary of the vertices");
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertexJson {
    pub id: usize,
    pub b: Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<GraphVertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &ResolutionGraph) -> Self {
        GraphJson {
            vertices: g.weights.iter().enumerate().map(|(id, b)| GraphVertexJson { id, b: Big(b.clone()) }).collect(),
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Vertex ids may be arbitrary; they are renumbered in the listed order.
    pub fn to_graph(&self) -> Result<ResolutionGraph> {
        let mut index = BTreeMap::new();
        let mut g = ResolutionGraph::new();
        for v in &self.vertices {
            if index.insert(v.id, g.add_vertex(v.b.0.clone())).is_some() {
                bail!("vertex id {} appears twice", v.id);
            }
        }
        for [a, b] in &self.edges {
            let (Some(&x), Some(&y)) = (index.get(a), index.get(b)) else {
                bail!("edge [{a}, {b}] refers to a missing vertex");
            };
            g.add_edge(x, y);
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbNodeJson {
    pub id: usize,
    /// Orbifold Euler number as `[numerator, denominator]`.
    pub e: [Big; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbEdgeJson {
    pub a: usize,
    pub b: usize,
    pub det: Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbLegJson {
    pub node: usize,
    pub det: Big,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldJson {
    pub nodes: Vec<OrbNodeJson>,
    pub edges: Vec<OrbEdgeJson>,
    pub legs: Vec<OrbLegJson>,
    pub free_edge: Option<Big>,
}

impl OrbifoldJson {
    pub fn from_orbifold(go: &OrbifoldDiagram) -> Self {
        OrbifoldJson {
            nodes: go
                .euler
                .iter()
                .enumerate()
                .map(|(id, e)| OrbNodeJson { id, e: [Big(e.numer().clone()), Big(e.denom().clone())] })
                .collect(),
            edges: go.edges.iter().map(|(a, b, d)| OrbEdgeJson { a: *a, b: *b, det: d.into() }).collect(),
            legs: go.legs.iter().map(|(n, d)| OrbLegJson { node: *n, det: d.into() }).collect(),
            free_edge: go.free_edge.as_ref().map(Big::from),
        }
    }

    pub fn to_orbifold(&self) -> Result<OrbifoldDiagram> {
        let mut index = BTreeMap::new();
        let mut euler = Vec::new();
        for n in &self.nodes {
            if n.e[1].0.is_zero() {
                bail!("node {} has a zero denominator", n.id);
            }
            if index.insert(n.id, euler.len()).is_some() {
                bail!("node id {} appears twice", n.id);
            }
            euler.push(Rat::new(n.e[0].0.clone(), n.e[1].0.clone()));
        }
        let node = |id: &usize| index.get(id).copied().ok_or_else(|| anyhow!("reference to missing node {id}"));
        let mut edges = Vec::new();
        for e in &self.edges {
            edges.push((node(&e.a)?, node(&e.b)?, e.det.0.clone()));
        }
        let mut legs = Vec::new();
        for l in &self.legs {
            legs.push((node(&l.node)?, l.det.0.clone()));
        }
        legs.sort();
        let free_edge = self.free_edge.as_ref().map(|b| b.0.clone());
        if free_edge.is_some() && !euler.is_empty() {
            bail!("a free edge cannot coexist with nodes");
        }
        Ok(OrbifoldDiagram { euler, edges, legs, free_edge })
    }
}

/// Parse support text: one `p1 p2 p3` triple per line, `#` starts a comment.
pub fn parse_support(text: &str) -> Result<Vec<IVec3>> {
    let mut pts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let c: Vec<BigInt> = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|s| !s.is_empty())
            .map(BigInt::from_str)
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("line {}: expected three integers", i + 1))?;
        let [x, y, z]: [BigInt; 3] = c.try_into().map_err(|_| anyhow!("line {}: expected three integers", i + 1))?;
        pts.push(IVec3::from_big(x, y, z));
    }
    check_support(&pts)?;
    Ok(pts)
}

fn check_support(pts: &[IVec3]) -> Result<()> {
    if pts.is_empty() {
        bail!("the support is empty");
    }
    if let Some(p) = pts.iter().find(|p| p.coords().iter().any(|c| c.is_negative())) {
        bail!("support point {p} has a negative coordinate");
    }
    Ok(())
}

/// Any of the accepted input artifacts.
#[derive(Clone, Debug)]
pub enum Input {
    Diagram(NewtonDiagram),
    Graph(ResolutionGraph),
    Orbifold(OrbifoldDiagram),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Diagram(_) => "diagram",
            Input::Graph(_) => "graph",
            Input::Orbifold(_) => "orbifold diagram",
        }
    }
}

/// JSON inputs are recognized by their keys; anything else is read as support text.
pub fn parse_input(text: &str) -> Result<Input> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Ok(Input::Diagram(newton_boundary(&parse_support(text)?)));
    }
    let value: serde_json::Value = serde_json::from_str(text).context("malformed JSON")?;
    let obj = value.as_object().ok_or_else(|| anyhow!("expected a JSON object"))?;
    if obj.contains_key("nodes") || obj.contains_key("free_edge") {
        let o: OrbifoldJson = serde_json::from_value(value).context("malformed orbifold JSON")?;
        return Ok(Input::Orbifold(o.to_orbifold()?));
    }
    let is_graph = obj.get("vertices").and_then(|v| v.as_array()).is_some_and(|vs| vs.iter().any(|v| v.is_object()));
    if is_graph {
        let g: GraphJson = serde_json::from_value(value).context("malformed graph JSON")?;
        return Ok(Input::Graph(g.to_graph()?));
    }
    let d: DiagramJson = serde_json::from_value(value).context("malformed diagram JSON")?;
    Ok(Input::Diagram(d.to_diagram()?))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
