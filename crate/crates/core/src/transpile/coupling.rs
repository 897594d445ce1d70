use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Directed cNOT connectivity: an edge `(c, t)` means `cx c t` is native.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    num_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(num_qubits: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<CouplingMap> {
        let mut map = CouplingMap {
            num_qubits,
            edges: BTreeSet::new(),
        };
        for (c, t) in edges {
            map.add_edge(c, t)?;
        }
        Ok(map)
    }

    /// Every ordered pair of distinct qubits.
    pub fn all_to_all(num_qubits: usize) -> CouplingMap {
        let edges = (0..num_qubits)
            .flat_map(|c| (0..num_qubits).filter(move |&t| t != c).map(move |t| (c, t)))
            .collect();
        CouplingMap { num_qubits, edges }
    }

    pub fn add_edge(&mut self, control: usize, target: usize) -> Result<()> {
        if control == target || control >= self.num_qubits || target >= self.num_qubits {
            return Err(Error::InvalidEdge(control, target));
        }
        self.edges.insert((control, target));
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, control: usize, target: usize) -> bool {
        self.edges.contains(&(control, target))
    }

    /// Adjacent in either direction.
    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    /// Undirected neighbours in ascending order.
    pub fn neighbours(&self, q: usize) -> Vec<usize> {
        (0..self.num_qubits)
            .filter(|&p| p != q && self.connected(q, p))
            .collect()
    }

    /// Shortest undirected path `from … to`, breaking ties toward lower indices.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from >= self.num_qubits || to >= self.num_qubits {
            return None;
        }
        let mut prev = vec![usize::MAX; self.num_qubits];
        let mut seen = vec![false; self.num_qubits];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(q) = queue.pop_front() {
            if q == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for p in self.neighbours(q) {
                if !seen[p] {
                    seen[p] = true;
                    prev[p] = q;
                    queue.push_back(p);
                }
            }
        }
        None
    }

    /// Connected as an undirected graph.
    pub fn is_connected(&self) -> bool {
        (1..self.num_qubits).all(|q| self.shortest_path(0, q).is_some())
    }
}
