//! Undirected multigraph positions for the edge-deletion game.
//!
//! A move removes an edge together with every edge sharing an endpoint with
//! it. Graphs are stored as a sorted multiset of normalized vertex pairs, so
//! equal graphs (same labels) compare equal.

use super::GameError;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// An undirected multigraph without self-loops, as a labeled edge multiset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GraphPosition {
    edges: Vec<(String, String)>,
}

impl GraphPosition {
    pub fn empty() -> GraphPosition {
        GraphPosition { edges: Vec::new() }
    }

    /// Builds a graph from endpoint pairs. Self-loops are rejected; vertex
    /// names must be non-empty and free of `-`, `,`, and whitespace so that
    /// every graph has a parseable literal.
    pub fn from_edges<I>(edges: I) -> Result<GraphPosition, GameError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut out = Vec::new();
        for (u, v) in edges {
            for name in [&u, &v] {
                if name.is_empty()
                    || name.contains(['-', ','])
                    || name.chars().any(char::is_whitespace)
                {
                    return Err(GameError::InvalidVertex { name: name.clone() });
                }
            }
            if u == v {
                return Err(GameError::SelfLoop { vertex: u });
            }
            out.push(if u <= v { (u, v) } else { (v, u) });
        }
        out.sort();
        Ok(GraphPosition { edges: out })
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<&str> {
        self.edges
            .iter()
            .flat_map(|(u, v)| [u.as_str(), v.as_str()])
            .collect()
    }

    /// Splits the edge set into connected components, ordered by their
    /// smallest edge.
    pub fn components(&self) -> Vec<GraphPosition> {
        let verts: Vec<&str> = self.vertices().into_iter().collect();
        let index: BTreeMap<&str, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, index[u.as_str()]), find(&mut parent, index[v.as_str()]));
            parent[ru] = rv;
        }
        let mut groups: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
        for (u, v) in &self.edges {
            let root = find(&mut parent, index[u.as_str()]);
            groups.entry(root).or_default().push((u.clone(), v.clone()));
        }
        let mut out: Vec<GraphPosition> = groups
            .into_values()
            .map(|edges| GraphPosition { edges }) // already sorted within
            .collect();
        out.sort();
        out
    }

    /// All successor graphs: pick an edge, delete it and everything incident.
    pub(crate) fn arc_kayles_options(&self) -> BTreeSet<GraphPosition> {
        let mut out = BTreeSet::new();
        let mut last: Option<&(String, String)> = None;
        for edge in &self.edges {
            if last == Some(edge) {
                continue; // parallel edges yield the same move
            }
            last = Some(edge);
            let (u, v) = edge;
            let survivors: Vec<(String, String)> = self
                .edges
                .iter()
                .filter(|(a, b)| a != u && a != v && b != u && b != v)
                .cloned()
                .collect();
            out.insert(GraphPosition { edges: survivors });
        }
        out
    }
}

impl fmt::Display for GraphPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for GraphPosition {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(GraphPosition::empty());
        }
        let mut edges = Vec::new();
        for part in s.split(',') {
            let (u, v) = part.trim().split_once('-').ok_or_else(|| GameError::InvalidLiteral {
                text: s.to_string(),
                reason: format!("expected an edge of the form u-v, found {part:?}"),
            })?;
            edges.push((u.trim().to_string(), v.trim().to_string()));
        }
        GraphPosition::from_edges(edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GraphPosition {
        s.parse().unwrap()
    }

    #[test]
    fn literals_normalize() {
        assert_eq!(g("b-a,c-b").to_string(), "a-b,b-c");
        assert_eq!(g("").edge_count(), 0);
        assert!(g("x-y,x-y").edge_count() == 2); // parallel edges kept
        assert!("a-a".parse::<GraphPosition>().is_err());
        assert!("a".parse::<GraphPosition>().is_err());
        assert!(GraphPosition::from_edges([("u v".to_string(), "w".to_string())]).is_err());
    }

    #[test]
    fn components_partition_edges() {
        let comps = g("a-b,c-d,b-e,f-g").components();
        let rendered: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, ["a-b,b-e", "c-d", "f-g"]);
        assert!(g("").components().is_empty());
    }

    #[test]
    fn moves_delete_closed_neighborhoods() {
        // Lone edge: one move to the empty graph.
        let opts = g("a-b").arc_kayles_options();
        assert_eq!(opts.len(), 1);
        assert!(opts.contains(&GraphPosition::empty()));
        // Two-edge path: either move clears the graph.
        let opts = g("a-b,b-c").arc_kayles_options();
        assert_eq!(opts.len(), 1);
        assert!(opts.contains(&GraphPosition::empty()));
        // Three-edge path: playing an end edge leaves the far edge.
        let opts = g("a-b,b-c,c-d").arc_kayles_options();
        let rendered: BTreeSet<String> = opts.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            rendered,
            ["", "c-d", "a-b"].iter().map(|s| s.to_string()).collect()
        );
        // Options always have strictly fewer edges.
        let p = g("a-b,b-c,c-d,d-e,a-e");
        for q in p.arc_kayles_options() {
            assert!(q.edge_count() < p.edge_count());
        }
    }
}
