use std::collections::BTreeSet;

use super::{AtomRecord, BondOrder, MolGraph};

/// Writes a (non-canonical) SMILES string that parses back to a graph
/// isomorphic to `g`. Atoms are emitted in depth-first order from atom 0.
pub fn to_smiles(g: &MolGraph) -> String {
    let n = g.atom_count();
    let mut rank = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut tree_bonds = vec![false; g.bonds().len()];
    let mut next_rank = 0;
    build_tree(g, 0, &mut rank, &mut next_rank, &mut children, &mut tree_bonds);

    // ring bonds keyed by the endpoint visited first
    let mut opens: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, bond) in g.bonds().iter().enumerate() {
        if tree_bonds[idx] {
            continue;
        }
        let (first, second) = if rank[bond.a] < rank[bond.b] {
            (bond.a, bond.b)
        } else {
            (bond.b, bond.a)
        };
        opens[first].push(idx);
        closes[second].push(idx);
    }

    let mut out = String::new();
    let mut ring_numbers = vec![0u32; g.bonds().len()];
    let mut in_use = BTreeSet::new();
    let ctx = Ctx {
        g,
        children: &children,
        opens: &opens,
        closes: &closes,
    };
    ctx.emit(0, &mut out, &mut ring_numbers, &mut in_use);
    out
}

fn build_tree(
    g: &MolGraph,
    u: usize,
    rank: &mut [usize],
    next_rank: &mut usize,
    children: &mut [Vec<usize>],
    tree_bonds: &mut [bool],
) {
    rank[u] = *next_rank;
    *next_rank += 1;
    let neighbors: Vec<(usize, usize)> = g.adjacency[u].clone();
    for (v, bond) in neighbors {
        if rank[v] == usize::MAX {
            tree_bonds[bond] = true;
            children[u].push(v);
            build_tree(g, v, rank, next_rank, children, tree_bonds);
        }
    }
}

struct Ctx<'a> {
    g: &'a MolGraph,
    children: &'a [Vec<usize>],
    opens: &'a [Vec<usize>],
    closes: &'a [Vec<usize>],
}

impl Ctx<'_> {
    fn emit(&self, u: usize, out: &mut String, ring_numbers: &mut [u32], in_use: &mut BTreeSet<u32>) {
        let atoms = self.g.atoms();
        write_atom(&atoms[u], out);

        for &bond in &self.opens[u] {
            let number = (1..).find(|k| !in_use.contains(k)).unwrap_or(1);
            in_use.insert(number);
            ring_numbers[bond] = number;
        }
        for &bond in &self.closes[u] {
            write_ring_number(ring_numbers[bond], out);
        }
        for &bond in &self.opens[u] {
            let b = &self.g.bonds()[bond];
            out.push_str(bond_symbol(b.order, &atoms[b.a], &atoms[b.b]));
            write_ring_number(ring_numbers[bond], out);
        }
        for &bond in &self.closes[u] {
            in_use.remove(&ring_numbers[bond]);
        }

        let kids = &self.children[u];
        for (i, &v) in kids.iter().enumerate() {
            let order = self.g.bond_between(u, v).map_or(BondOrder::Single, |b| b.order);
            let last = i + 1 == kids.len();
            if !last {
                out.push('(');
            }
            out.push_str(bond_symbol(order, &atoms[u], &atoms[v]));
            self.emit(v, out, ring_numbers, in_use);
            if !last {
                out.push(')');
            }
        }
    }
}

fn write_ring_number(number: u32, out: &mut String) {
    if number < 10 {
        out.push(char::from_digit(number, 10).unwrap_or('0'));
    } else {
        out.push_str(&format!("%{number:02}"));
    }
}

fn bond_symbol(order: BondOrder, a: &AtomRecord, b: &AtomRecord) -> &'static str {
    let both_aromatic = a.aromatic && b.aromatic;
    match order {
        BondOrder::Single if both_aromatic => "-",
        BondOrder::Single => "",
        BondOrder::Double => "=",
        BondOrder::Triple => "#",
        BondOrder::Aromatic if both_aromatic => "",
        BondOrder::Aromatic => ":",
    }
}

fn write_atom(atom: &AtomRecord, out: &mut String) {
    let symbol = if atom.aromatic {
        atom.element.symbol().to_ascii_lowercase()
    } else {
        atom.element.symbol().to_string()
    };
    if !atom.bracket && atom.formal_charge == 0 {
        out.push_str(&symbol);
        return;
    }
    out.push('[');
    out.push_str(&symbol);
    match atom.h_count {
        0 => {}
        1 => out.push('H'),
        h => out.push_str(&format!("H{h}")),
    }
    match atom.formal_charge {
        0 => {}
        1 => out.push('+'),
        -1 => out.push('-'),
        c if c > 0 => out.push_str(&format!("+{c}")),
        c => out.push_str(&format!("-{}", -c)),
    }
    out.push(']');
}

#[cfg(test)]
mod tests {
    use super::super::parse_smiles;
    use super::*;

    fn round_trip(s: &str) {
        let g = parse_smiles(s).unwrap();
        let written = to_smiles(&g);
        let back = parse_smiles(&written).unwrap_or_else(|e| panic!("{s} -> {written}: {e}"));
        assert_eq!(back.atom_count(), g.atom_count(), "{s} -> {written}");
        assert_eq!(back.bonds().len(), g.bonds().len(), "{s} -> {written}");
        assert_eq!(
            back.invariant_signature(),
            g.invariant_signature(),
            "{s} -> {written}"
        );
    }

    #[test]
    fn simple_molecules_round_trip() {
        for s in [
            "C",
            "CCO",
            "CC(=O)O",
            "c1ccccc1",
            "c1ccc2ccccc2c1",
            "C1CC2CCC1C2",
            "C[N+](C)(C)C",
            "c1cc[nH]c1",
            "Cc1ccccc1-c1ccccc1",
            "C1CCC2(CC1)CCCC2",
            "CC#N",
            "[O-][N+](=O)c1ccccc1",
        ] {
            round_trip(s);
        }
    }

    #[test]
    fn chain_written_plainly() {
        assert_eq!(to_smiles(&parse_smiles("CCO").unwrap()), "CCO");
        assert_eq!(to_smiles(&parse_smiles("C1CC1").unwrap()), "C1CC1");
        assert_eq!(to_smiles(&parse_smiles("CC(C)C").unwrap()), "CC(C)C");
    }

    #[test]
    fn many_rings_use_two_digit_numbers() {
        // a ladder of fused rings keeps many closures open at once
        let g = parse_smiles("C1CC2CC3CC4CC5CC6CC7CC8CC9CC%10CC%11CC%11C%10C9C8C7C6C5C4C3C2C1").unwrap();
        let written = to_smiles(&g);
        let back = parse_smiles(&written).unwrap();
        assert_eq!(back.invariant_signature(), g.invariant_signature());
    }
}
