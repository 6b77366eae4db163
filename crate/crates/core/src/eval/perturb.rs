//! Single-edit perturbations of a molecular graph.
//!
//! Three edit kinds: substitute an atom's element, add a single bond between
//! two unbonded atoms that both carry a hydrogen, and delete a bond. Every
//! candidate goes back through the valence model, so hydrogen counts are
//! recomputed and invalid results are dropped.
//!
//! Bracket atoms and charged atoms are never edited, since their hydrogen
//! counts are explicit. Aromatic bonds are never added or deleted. An
//! aromatic atom may only switch between carbon and nitrogen, and becomes
//! nitrogen only when it sits in a ring with no substituent (`c` to `n` in
//! benzene gives pyridine).

use std::collections::HashSet;

use crate::molgraph::{AtomRecord, Bond, BondOrder, Element, MolGraph};

/// Elements used for substitutions unless configured otherwise.
pub const DEFAULT_ELEMENTS: [Element; 6] = [Element::C, Element::N, Element::O, Element::S, Element::F, Element::Cl];

fn editable(atom: &AtomRecord) -> bool {
    !atom.bracket && atom.formal_charge == 0
}

fn aromatic_swap_allowed(g: &MolGraph, i: usize, to: Element) -> bool {
    match to {
        Element::C => true,
        Element::N => {
            let bonds: Vec<BondOrder> = g.neighbor_bonds(i).map(|(_, o)| o).collect();
            bonds.len() == 2 && bonds.iter().all(|&o| o == BondOrder::Aromatic)
        }
        _ => false,
    }
}

fn substitutions(g: &MolGraph, elements: &[Element], out: &mut Vec<MolGraph>) {
    for (i, atom) in g.atoms().iter().enumerate() {
        if !editable(atom) {
            continue;
        }
        for &e in elements {
            if e == atom.element || (atom.aromatic && !aromatic_swap_allowed(g, i, e)) {
                continue;
            }
            let mut atoms = g.atoms().to_vec();
            atoms[i] = AtomRecord::organic(e, atom.aromatic);
            if let Ok(m) = MolGraph::from_parts(atoms, g.bonds().to_vec()) {
                out.push(m);
            }
        }
    }
}

fn additions(g: &MolGraph, out: &mut Vec<MolGraph>) {
    let atoms = g.atoms();
    let n = atoms.len();
    for i in 0..n {
        if !editable(&atoms[i]) || atoms[i].h_count == 0 {
            continue;
        }
        for j in i + 1..n {
            if !editable(&atoms[j]) || atoms[j].h_count == 0 || g.bond_between(i, j).is_some() {
                continue;
            }
            let mut bonds = g.bonds().to_vec();
            bonds.push(Bond::new(i, j, BondOrder::Single));
            if let Ok(m) = MolGraph::from_parts(atoms.to_vec(), bonds) {
                out.push(m);
            }
        }
    }
}

fn deletions(g: &MolGraph, out: &mut Vec<MolGraph>) {
    let atoms = g.atoms();
    for (idx, bond) in g.bonds().iter().enumerate() {
        if bond.order == BondOrder::Aromatic || !editable(&atoms[bond.a]) || !editable(&atoms[bond.b]) {
            continue;
        }
        let mut bonds = g.bonds().to_vec();
        bonds.remove(idx);
        // disconnected results fail construction
        if let Ok(m) = MolGraph::from_parts(atoms.to_vec(), bonds) {
            out.push(m);
        }
    }
}

/// All distinct valid molecules one edit away from `g`, deduplicated by
/// invariant signature, in generation order (substitutions, additions,
/// deletions).
pub fn perturb_all(g: &MolGraph, elements: &[Element]) -> Vec<MolGraph> {
    let mut raw = Vec::new();
    substitutions(g, elements, &mut raw);
    additions(g, &mut raw);
    deletions(g, &mut raw);
    let mut seen: HashSet<u64> = HashSet::from([g.invariant_signature()]);
    raw.into_iter().filter(|m| seen.insert(m.invariant_signature())).collect()
}
