use alloc::vec::Vec;

use super::rewrites::reverse_cx;
use super::CouplingMap;
use crate::circuit::{Circuit, Gate};
use crate::{Error, Result};

/// Output of [`route`].
#[derive(Debug, Clone, PartialEq)]
pub struct Routed {
    /// Circuit over the map's physical qubits; measurements already follow
    /// the final layout.
    pub circuit: Circuit,
    /// `final_layout[l]` is the physical qubit holding logical qubit `l` at
    /// the end of the circuit (identity at the start). Covers every qubit of
    /// the map, including idle ones the SWAPs moved.
    pub final_layout: Vec<usize>,
}

impl Routed {
    pub fn is_identity_layout(&self) -> bool {
        self.final_layout.iter().enumerate().all(|(l, &p)| l == p)
    }

    /// Basis-state permutation sending a logical index to the physical index
    /// it occupies after routing.
    pub fn permute_index(&self, logical_index: usize) -> usize {
        let mut out = 0;
        for (l, &p) in self.final_layout.iter().enumerate() {
            out |= ((logical_index >> l) & 1) << p;
        }
        out
    }
}

/// A cNOT that the coupling map does not provide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub gate_index: usize,
    pub control: usize,
    pub target: usize,
}

/// Every cNOT of `circuit` that is not an edge of `map`.
pub fn validate(circuit: &Circuit, map: &CouplingMap) -> Vec<Violation> {
    circuit
        .gates()
        .iter()
        .enumerate()
        .filter_map(|(gate_index, g)| match *g {
            Gate::Cx { control, target } if !map.has_edge(control, target) => Some(Violation {
                gate_index,
                control,
                target,
            }),
            _ => None,
        })
        .collect()
}

struct Router<'a> {
    map: &'a CouplingMap,
    out: Circuit,
    /// logical → physical
    layout: Vec<usize>,
    /// physical → logical
    occupant: Vec<usize>,
}

impl Router<'_> {
    fn push(&mut self, g: Gate) -> Result<()> {
        self.out.push(g)
    }

    /// Native cNOT between adjacent physical qubits, reversed with Hadamards if needed.
    fn cx(&mut self, control: usize, target: usize) -> Result<()> {
        if self.map.has_edge(control, target) {
            self.push(Gate::cx(control, target))
        } else if self.map.has_edge(target, control) {
            reverse_cx(control, target)?.into_iter().try_for_each(|g| self.push(g))
        } else {
            Err(Error::Unroutable {
                from: control,
                to: target,
            })
        }
    }

    /// Three-cNOT SWAP with the outer pair along the native direction.
    fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        let (a, b) = if self.map.has_edge(a, b) { (a, b) } else { (b, a) };
        self.cx(a, b)?;
        self.cx(b, a)?;
        self.cx(a, b)?;
        let (la, lb) = (self.occupant[a], self.occupant[b]);
        self.occupant.swap(a, b);
        self.layout[la] = b;
        self.layout[lb] = a;
        Ok(())
    }
}

/// Rewrite `circuit` so every cNOT is an edge of `map`.
///
/// Non-adjacent cNOTs move the control along the shortest path (lowest index
/// first on ties) with SWAPs; wrongly oriented cNOTs are reversed with four
/// Hadamards. The qubit relabelling caused by the SWAPs is returned in
/// [`Routed::final_layout`], and measurements are moved with their qubits so
/// every classical bit keeps its meaning.
pub fn route(circuit: &Circuit, map: &CouplingMap) -> Result<Routed> {
    let n = map.num_qubits();
    if circuit.num_qubits() > n {
        return Err(Error::MapTooSmall {
            needed: circuit.num_qubits(),
            available: n,
        });
    }
    let mut r = Router {
        map,
        out: Circuit::new(n),
        layout: (0..n).collect(),
        occupant: (0..n).collect(),
    };
    for g in circuit.gates() {
        match *g {
            Gate::Single { op, qubit } => r.push(Gate::Single {
                op,
                qubit: r.layout[qubit],
            })?,
            Gate::Cx { control, target } => {
                let (pc, pt) = (r.layout[control], r.layout[target]);
                if !map.connected(pc, pt) {
                    let path = map
                        .shortest_path(pc, pt)
                        .ok_or(Error::Unroutable { from: pc, to: pt })?;
                    for w in path[..path.len() - 1].windows(2) {
                        r.swap(w[0], w[1])?;
                    }
                }
                r.cx(r.layout[control], r.layout[target])?;
            }
        }
    }
    for m in circuit.measurements() {
        r.out.measure(r.layout[m.qubit], m.cbit, m.basis)?;
    }
    Ok(Routed {
        circuit: r.out,
        final_layout: r.layout,
    })
}
