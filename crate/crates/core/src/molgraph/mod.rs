//! Heavy-atom molecular graphs.
//!
//! Hydrogens are never nodes; each atom carries its hydrogen count instead.
//! Graphs are validated on construction (connected, no self loops, no
//! duplicate bonds) and immutable afterwards.

mod element;
pub mod io;
mod smiles;
mod writer;

use std::collections::VecDeque;

use thiserror::Error;

use crate::hashing::fnv1a_words;

pub use element::{Element, ValenceError};
pub use smiles::{parse_smiles, SmilesError};
pub use writer::to_smiles;

/// Bond multiplicity. Aromatic bonds count as 1.5 towards bond-order sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    pub fn value(self) -> f64 {
        match self {
            BondOrder::Single => 1.0,
            BondOrder::Double => 2.0,
            BondOrder::Triple => 3.0,
            BondOrder::Aromatic => 1.5,
        }
    }

    /// Integer code `{1, 2, 3, 4}` used when hashing environments.
    pub fn code(self) -> u64 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
            BondOrder::Aromatic => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtomRecord {
    pub element: Element,
    /// Attached hydrogens, implicit or explicit.
    pub h_count: u8,
    pub formal_charge: i8,
    pub aromatic: bool,
    /// Written as a bracket atom, so `h_count` is fixed rather than derived
    /// from the valence model.
    pub bracket: bool,
}

impl AtomRecord {
    /// Organic-subset atom whose hydrogen count is filled in by
    /// [`MolGraph::from_parts`].
    pub fn organic(element: Element, aromatic: bool) -> Self {
        Self {
            element,
            h_count: 0,
            formal_charge: 0,
            aromatic,
            bracket: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
}

impl Bond {
    pub fn new(a: usize, b: usize, order: BondOrder) -> Self {
        Self { a, b, order }
    }

    pub fn other(&self, atom: usize) -> usize {
        if self.a == atom {
            self.b
        } else {
            self.a
        }
    }

    fn key(&self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("molecule has no atoms")]
    Empty,
    #[error("molecule has more than one fragment")]
    Disconnected,
    #[error("bond {bond} references atom {atom}, but there are only {n_atoms} atoms")]
    AtomOutOfRange { bond: usize, atom: usize, n_atoms: usize },
    #[error("bond {0} connects an atom to itself")]
    SelfLoop(usize),
    #[error("duplicate bond between atoms {0} and {1}")]
    DuplicateBond(usize, usize),
    #[error("atom index {index} out of range for {n_atoms} atoms")]
    IndexOutOfRange { index: usize, n_atoms: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("valence violation at atom {atom}: {source}")]
    Valence {
        atom: usize,
        #[source]
        source: ValenceError,
    },
}

/// Undirected heavy-atom graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolGraph {
    atoms: Vec<AtomRecord>,
    bonds: Vec<Bond>,
    /// `(neighbor, bond index)` per atom, in bond insertion order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl MolGraph {
    /// Builds a graph from atoms whose hydrogen counts are already final.
    /// Checks structure only.
    pub fn new(atoms: Vec<AtomRecord>, bonds: Vec<Bond>) -> Result<Self, GraphError> {
        if atoms.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = atoms.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::with_capacity(bonds.len());
        for (idx, bond) in bonds.iter().enumerate() {
            for atom in [bond.a, bond.b] {
                if atom >= n {
                    return Err(GraphError::AtomOutOfRange { bond: idx, atom, n_atoms: n });
                }
            }
            if bond.a == bond.b {
                return Err(GraphError::SelfLoop(idx));
            }
            let key = bond.key();
            if !seen.insert(key) {
                return Err(GraphError::DuplicateBond(key.0, key.1));
            }
            adjacency[bond.a].push((bond.b, idx));
            adjacency[bond.b].push((bond.a, idx));
        }
        let graph = Self { atoms, bonds, adjacency };
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    /// Builds a graph, deriving hydrogen counts of non-bracket atoms from the
    /// valence model and checking the valence of every atom.
    pub fn from_parts(mut atoms: Vec<AtomRecord>, bonds: Vec<Bond>) -> Result<Self, GraphError> {
        let mut orders: Vec<Vec<BondOrder>> = vec![Vec::new(); atoms.len()];
        for bond in &bonds {
            if let Some(o) = orders.get_mut(bond.a) {
                o.push(bond.order);
            }
            if let Some(o) = orders.get_mut(bond.b) {
                o.push(bond.order);
            }
        }
        for (i, atom) in atoms.iter_mut().enumerate() {
            let result = if atom.bracket {
                element::check_explicit(atom, &orders[i])
            } else {
                element::implicit_hydrogens(atom, &orders[i]).map(|h| atom.h_count = h)
            };
            result.map_err(|source| GraphError::Valence { atom: i, source })?;
        }
        Self::new(atoms, bonds)
    }

    pub fn atoms(&self) -> &[AtomRecord] {
        &self.atoms
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom(&self, i: usize) -> Result<&AtomRecord, GraphError> {
        self.atoms.get(i).ok_or(GraphError::IndexOutOfRange {
            index: i,
            n_atoms: self.atoms.len(),
        })
    }

    /// Heavy-atom neighbors of `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().map(|&(j, _)| j)
    }

    /// `(neighbor, bond order)` pairs of `i`.
    pub fn neighbor_bonds(&self, i: usize) -> impl Iterator<Item = (usize, BondOrder)> + '_ {
        self.adjacency[i].iter().map(|&(j, b)| (j, self.bonds[b].order))
    }

    pub fn bond_between(&self, i: usize, j: usize) -> Option<&Bond> {
        self.adjacency
            .get(i)?
            .iter()
            .find(|&&(n, _)| n == j)
            .map(|&(_, b)| &self.bonds[b])
    }

    /// Number of bonds to other heavy atoms.
    pub fn heavy_degree(&self, i: usize) -> Result<usize, GraphError> {
        self.atom(i)?;
        Ok(self.adjacency[i].len())
    }

    pub(crate) fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|d| d.is_some())
    }

    fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.atoms.len()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest-path lengths between every pair of atoms, by BFS from each
    /// atom.
    pub fn distance_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.atoms.len())
            .map(|s| self.bfs(s).into_iter().map(|d| d.unwrap_or(u32::MAX)).collect())
            .collect()
    }

    /// Longest shortest path.
    pub fn diameter(&self) -> u32 {
        self.distance_matrix()
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Sum of shortest-path lengths over unordered atom pairs.
    pub fn wiener_index(&self) -> u64 {
        let total: u64 = self
            .distance_matrix()
            .iter()
            .flat_map(|row| row.iter().map(|&d| u64::from(d)))
            .sum();
        total / 2
    }

    /// Fraction of heavy atoms that are not carbon.
    pub fn heteroatom_fraction(&self) -> f64 {
        let hetero = self.atoms.iter().filter(|a| a.element != Element::C).count();
        hetero as f64 / self.atoms.len() as f64
    }

    /// Relabels atoms so that old atom `i` becomes atom `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::InvalidPermutation(n));
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidPermutation(n));
            }
        }
        let mut atoms = self.atoms.clone();
        for (old, &new) in perm.iter().enumerate() {
            atoms[new] = self.atoms[old];
        }
        let bonds = self
            .bonds
            .iter()
            .map(|b| Bond::new(perm[b.a], perm[b.b], b.order))
            .collect();
        Self::new(atoms, bonds)
    }

    /// Isomorphism-invariant 64-bit signature from Weisfeiler-Lehman
    /// refinement over atom attributes and bond orders. Isomorphic graphs
    /// always agree; distinct graphs collide only when WL cannot separate
    /// them (or on a hash collision).
    pub fn invariant_signature(&self) -> u64 {
        let n = self.atoms.len();
        let mut labels: Vec<u64> = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                fnv1a_words(&[
                    u64::from(a.element.atomic_number()),
                    u64::from(a.aromatic),
                    u64::from(a.h_count),
                    a.formal_charge as i64 as u64,
                    self.degree(i) as u64,
                ])
            })
            .collect();
        let mut env = Vec::new();
        for _ in 0..n {
            let next: Vec<u64> = (0..n)
                .map(|i| {
                    env.clear();
                    env.extend(self.neighbor_bonds(i).map(|(j, o)| (o.code(), labels[j])));
                    env.sort_unstable();
                    let mut words = Vec::with_capacity(1 + 2 * env.len());
                    words.push(labels[i]);
                    for &(o, l) in &env {
                        words.push(o);
                        words.push(l);
                    }
                    fnv1a_words(&words)
                })
                .collect();
            labels = next;
        }
        labels.sort_unstable();
        let mut words = vec![n as u64, self.bonds.len() as u64];
        words.extend(labels);
        fnv1a_words(&words)
    }
}

/// Heavy-atom degree of atom `i`.
pub fn heavy_degree(g: &MolGraph, i: usize) -> Result<usize, GraphError> {
    g.heavy_degree(i)
}

pub fn diameter(g: &MolGraph) -> u32 {
    g.diameter()
}

pub fn wiener_index(g: &MolGraph) -> u64 {
    g.wiener_index()
}

pub fn permute(g: &MolGraph, perm: &[usize]) -> Result<MolGraph, GraphError> {
    g.permute(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mol(s: &str) -> MolGraph {
        parse_smiles(s).unwrap()
    }

    fn floyd_warshall(g: &MolGraph) -> Vec<Vec<u64>> {
        let n = g.atom_count();
        let inf = u64::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for b in g.bonds() {
            d[b.a][b.b] = 1;
            d[b.b][b.a] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    #[test]
    fn heavy_degree_examples() {
        assert_eq!(heavy_degree(&mol("CCO"), 1).unwrap(), 2);
        assert_eq!(heavy_degree(&mol("C"), 0).unwrap(), 0);
        assert_eq!(heavy_degree(&mol("C(C)(C)(C)C"), 0).unwrap(), 4);
        assert!(matches!(
            heavy_degree(&mol("CC"), 2),
            Err(GraphError::IndexOutOfRange { index: 2, n_atoms: 2 })
        ));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&mol("C")), 0);
        assert_eq!(diameter(&mol("CCCCCCC")), 6);
        assert_eq!(diameter(&mol("c1ccccc1")), 3);
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&mol("C")), 0);
        assert_eq!(wiener_index(&mol("CCO")), 4);
        assert_eq!(wiener_index(&mol("c1ccccc1")), 27);
    }

    #[test]
    fn bfs_agrees_with_floyd_warshall() {
        for s in ["CC(C)C(=O)O", "c1ccc2ccccc2c1", "C1CC2CCC1C2", "OCC(N)C(=O)NC1CCCC1"] {
            let g = mol(s);
            let fw = floyd_warshall(&g);
            let diam = fw.iter().flatten().copied().max().unwrap();
            let wiener: u64 = fw.iter().flatten().sum::<u64>() / 2;
            assert_eq!(u64::from(g.diameter()), diam, "{s}");
            assert_eq!(g.wiener_index(), wiener, "{s}");
        }
    }

    #[test]
    fn permute_identity_and_reverse() {
        let g = mol("CCO");
        assert_eq!(g.permute(&[0, 1, 2]).unwrap(), g);
        let p = g.permute(&[2, 1, 0]).unwrap();
        assert_eq!(p.atoms()[0].element, Element::O);
        assert_eq!(p.atoms()[2].element, Element::C);
        assert_eq!(p.atoms()[2].h_count, 3);
        assert!(p.bond_between(0, 1).is_some());
        assert!(p.bond_between(1, 2).is_some());
        assert_eq!(p.invariant_signature(), g.invariant_signature());
    }

    #[test]
    fn permute_rejects_non_bijections() {
        let g = mol("CCO");
        assert_eq!(g.permute(&[0, 0, 1]), Err(GraphError::InvalidPermutation(3)));
        assert_eq!(g.permute(&[0, 1]), Err(GraphError::InvalidPermutation(3)));
        assert_eq!(g.permute(&[0, 1, 3]), Err(GraphError::InvalidPermutation(3)));
    }

    #[test]
    fn structural_validation() {
        let c = AtomRecord::organic(Element::C, false);
        assert_eq!(MolGraph::new(vec![], vec![]), Err(GraphError::Empty));
        assert_eq!(
            MolGraph::from_parts(vec![c, c], vec![]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            MolGraph::from_parts(vec![c], vec![Bond::new(0, 0, BondOrder::Single)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            MolGraph::from_parts(
                vec![c, c],
                vec![Bond::new(0, 1, BondOrder::Single), Bond::new(1, 0, BondOrder::Double)]
            ),
            Err(GraphError::DuplicateBond(0, 1))
        );
    }

    #[test]
    fn signature_separates_isomers() {
        assert_ne!(mol("CCCC").invariant_signature(), mol("CC(C)C").invariant_signature());
        assert_ne!(mol("CCO").invariant_signature(), mol("COC").invariant_signature());
        assert_eq!(mol("OCC").invariant_signature(), mol("CCO").invariant_signature());
    }

    #[test]
    fn heteroatom_fraction_counts_non_carbon() {
        assert!((mol("CCO").heteroatom_fraction() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(mol("CCCC").heteroatom_fraction(), 0.0);
    }
}
