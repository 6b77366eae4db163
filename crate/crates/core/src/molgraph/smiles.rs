//! Parser for a SMILES subset: organic-subset and bracket atoms (element,
//! hydrogen count, charge), bond symbols `- = # :`, branches and ring
//! closures (`1`-`9`, `%nn`). Stereo, isotopes, wildcards, atom classes and
//! multi-fragment input are rejected.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{AtomRecord, Bond, BondOrder, Element, GraphError, MolGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmilesError {
    #[error("empty SMILES")]
    Empty,
    #[error("unsupported token '{token}' at offset {offset}")]
    Unsupported { token: String, offset: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { message: String, offset: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl SmilesError {
    /// Byte offset of the offending token, when there is one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            SmilesError::Unsupported { offset, .. } | SmilesError::Syntax { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}

fn syntax(message: impl Into<String>, offset: usize) -> SmilesError {
    SmilesError::Syntax {
        message: message.into(),
        offset,
    }
}

fn unsupported(token: impl Into<String>, offset: usize) -> SmilesError {
    SmilesError::Unsupported {
        token: token.into(),
        offset,
    }
}

struct OpenRing {
    atom: usize,
    order: Option<BondOrder>,
    offset: usize,
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    atoms: Vec<AtomRecord>,
    bonds: Vec<(usize, usize, Option<BondOrder>)>,
    branches: Vec<(usize, usize)>,
    prev: Option<usize>,
    pending: Option<(BondOrder, usize)>,
    rings: BTreeMap<u32, OpenRing>,
}

/// Parses `input` into a heavy-atom graph. Atoms are indexed in the order
/// they appear.
pub fn parse_smiles(input: &str) -> Result<MolGraph, SmilesError> {
    if input.is_empty() {
        return Err(SmilesError::Empty);
    }
    let mut parser = Parser {
        input: input.as_bytes(),
        pos: 0,
        atoms: Vec::new(),
        bonds: Vec::new(),
        branches: Vec::new(),
        prev: None,
        pending: None,
        rings: BTreeMap::new(),
    };
    parser.run()?;
    parser.finish()
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<u8> {
        self.input.get(self.pos + ahead).copied()
    }

    fn run(&mut self) -> Result<(), SmilesError> {
        while let Some(c) = self.peek() {
            let offset = self.pos;
            match c {
                b'[' => {
                    let atom = self.bracket_atom()?;
                    self.add_atom(atom, offset)?;
                }
                b'A'..=b'Z' | b'a'..=b'z' => {
                    let atom = self.organic_atom()?;
                    self.add_atom(atom, offset)?;
                }
                b'(' => {
                    let prev = self.prev.ok_or_else(|| syntax("branch without a preceding atom", offset))?;
                    if self.pending.is_some() {
                        return Err(syntax("bond symbol before '('", offset));
                    }
                    self.branches.push((prev, offset));
                    self.pos += 1;
                }
                b')' => {
                    if let Some((_, at)) = self.pending {
                        return Err(syntax("bond symbol without a following atom", at));
                    }
                    let (atom, _) = self.branches.pop().ok_or_else(|| syntax("unmatched ')'", offset))?;
                    self.prev = Some(atom);
                    self.pos += 1;
                }
                b'-' | b'=' | b'#' | b':' => {
                    if self.pending.is_some() {
                        return Err(syntax("two consecutive bond symbols", offset));
                    }
                    let order = match c {
                        b'-' => BondOrder::Single,
                        b'=' => BondOrder::Double,
                        b'#' => BondOrder::Triple,
                        _ => BondOrder::Aromatic,
                    };
                    self.pending = Some((order, offset));
                    self.pos += 1;
                }
                b'0'..=b'9' | b'%' => self.ring_bond()?,
                b'/' | b'\\' | b'$' | b'*' | b'.' | b'@' => {
                    return Err(unsupported((c as char).to_string(), offset));
                }
                _ => {
                    let token = std::str::from_utf8(&self.input[offset..])
                        .ok()
                        .and_then(|s| s.chars().next())
                        .map_or_else(|| format!("\\x{c:02x}"), |ch| ch.to_string());
                    return Err(syntax(format!("unexpected character '{token}'"), offset));
                }
            }
        }
        Ok(())
    }

    fn add_atom(&mut self, atom: AtomRecord, offset: usize) -> Result<(), SmilesError> {
        let idx = self.atoms.len();
        self.atoms.push(atom);
        match (self.prev, self.pending.take()) {
            (Some(prev), pending) => self.bonds.push((prev, idx, pending.map(|(o, _)| o))),
            (None, Some((_, at))) => return Err(syntax("bond symbol without a preceding atom", at)),
            (None, None) if idx > 0 => return Err(syntax("atom is not connected", offset)),
            (None, None) => {}
        }
        self.prev = Some(idx);
        Ok(())
    }

    fn organic_atom(&mut self) -> Result<AtomRecord, SmilesError> {
        let offset = self.pos;
        let c = self.input[offset];
        let (element, aromatic, len) = match (c, self.peek_at(1)) {
            (b'C', Some(b'l')) => (Element::Cl, false, 2),
            (b'B', Some(b'r')) => (Element::Br, false, 2),
            (b'B', _) => (Element::B, false, 1),
            (b'C', _) => (Element::C, false, 1),
            (b'N', _) => (Element::N, false, 1),
            (b'O', _) => (Element::O, false, 1),
            (b'P', _) => (Element::P, false, 1),
            (b'S', _) => (Element::S, false, 1),
            (b'F', _) => (Element::F, false, 1),
            (b'I', _) => (Element::I, false, 1),
            (b'b', _) => (Element::B, true, 1),
            (b'c', _) => (Element::C, true, 1),
            (b'n', _) => (Element::N, true, 1),
            (b'o', _) => (Element::O, true, 1),
            (b'p', _) => (Element::P, true, 1),
            (b's', _) => (Element::S, true, 1),
            _ => {
                let mut end = offset + 1;
                if c.is_ascii_uppercase() && self.input.get(end).is_some_and(u8::is_ascii_lowercase) {
                    end += 1;
                }
                let token = String::from_utf8_lossy(&self.input[offset..end]).into_owned();
                return Err(unsupported(token, offset));
            }
        };
        self.pos += len;
        Ok(AtomRecord::organic(element, aromatic))
    }

    fn read_number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.input[start..self.pos]).ok()?.parse().ok()
    }

    fn bracket_atom(&mut self) -> Result<AtomRecord, SmilesError> {
        let open = self.pos;
        self.pos += 1;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            self.read_number();
            let token = String::from_utf8_lossy(&self.input[start..self.pos]).into_owned();
            return Err(unsupported(format!("isotope {token}"), start));
        }
        let sym_start = self.pos;
        let first = self.peek().ok_or_else(|| syntax("unterminated bracket atom", open))?;
        let (element, aromatic) = if first.is_ascii_uppercase() {
            let two = self.peek_at(1).filter(u8::is_ascii_lowercase);
            let one_sym = (first as char).to_string();
            match two {
                Some(second) => {
                    let two_sym = format!("{}{}", first as char, second as char);
                    if let Some(e) = Element::from_symbol(&two_sym) {
                        self.pos += 2;
                        (e, false)
                    } else {
                        return Err(unsupported(two_sym, sym_start));
                    }
                }
                None => match Element::from_symbol(&one_sym) {
                    Some(e) => {
                        self.pos += 1;
                        (e, false)
                    }
                    None => return Err(unsupported(one_sym, sym_start)),
                },
            }
        } else if first.is_ascii_lowercase() {
            let e = match first {
                b'b' => Element::B,
                b'c' => Element::C,
                b'n' => Element::N,
                b'o' => Element::O,
                b'p' => Element::P,
                b's' => Element::S,
                _ => return Err(unsupported((first as char).to_string(), sym_start)),
            };
            if self.peek_at(1).is_some_and(|c| c.is_ascii_lowercase()) {
                let token = String::from_utf8_lossy(&self.input[sym_start..sym_start + 2]).into_owned();
                return Err(unsupported(token, sym_start));
            }
            self.pos += 1;
            (e, true)
        } else if first == b'*' {
            return Err(unsupported("*", sym_start));
        } else {
            return Err(syntax("expected an element symbol", sym_start));
        };

        if self.peek() == Some(b'@') {
            return Err(unsupported("@", self.pos));
        }

        let mut h_count = 0u8;
        if self.peek() == Some(b'H') {
            self.pos += 1;
            let at = self.pos;
            h_count = match self.read_number() {
                Some(n) => u8::try_from(n).map_err(|_| syntax("hydrogen count too large", at))?,
                None => 1,
            };
        }

        let mut charge: i32 = 0;
        if let Some(sign @ (b'+' | b'-')) = self.peek() {
            let unit = if sign == b'+' { 1 } else { -1 };
            self.pos += 1;
            if let Some(n) = self.read_number() {
                charge = unit * n as i32;
            } else {
                charge = unit;
                while self.peek() == Some(sign) {
                    charge += unit;
                    self.pos += 1;
                }
            }
        }
        let formal_charge = i8::try_from(charge)
            .ok()
            .filter(|c| c.abs() <= 8)
            .ok_or_else(|| syntax("formal charge out of range", sym_start))?;

        match self.peek() {
            Some(b']') => self.pos += 1,
            Some(b':') => return Err(unsupported("atom class", self.pos)),
            Some(c) => return Err(unsupported((c as char).to_string(), self.pos)),
            None => return Err(syntax("unterminated bracket atom", open)),
        }

        Ok(AtomRecord {
            element,
            h_count,
            formal_charge,
            aromatic,
            bracket: true,
        })
    }

    fn ring_bond(&mut self) -> Result<(), SmilesError> {
        let offset = self.pos;
        let number = if self.input[offset] == b'%' {
            let digits = self.input.get(offset + 1..offset + 3);
            match digits {
                Some(d) if d.iter().all(u8::is_ascii_digit) => {
                    self.pos += 3;
                    u32::from(d[0] - b'0') * 10 + u32::from(d[1] - b'0')
                }
                _ => return Err(syntax("'%' must be followed by two digits", offset)),
            }
        } else {
            self.pos += 1;
            u32::from(self.input[offset] - b'0')
        };
        let atom = self
            .prev
            .ok_or_else(|| syntax("ring closure without a preceding atom", offset))?;
        let order = self.pending.take().map(|(o, _)| o);
        match self.rings.remove(&number) {
            Some(open) => {
                if open.atom == atom {
                    return Err(syntax("ring closure to the same atom", offset));
                }
                let order = match (open.order, order) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(syntax("conflicting ring-closure bond symbols", offset))
                    }
                    (a, b) => a.or(b),
                };
                let exists = self
                    .bonds
                    .iter()
                    .any(|&(x, y, _)| (x == open.atom && y == atom) || (x == atom && y == open.atom));
                if exists {
                    return Err(syntax("ring closure duplicates an existing bond", offset));
                }
                self.bonds.push((open.atom, atom, order));
            }
            None => {
                self.rings.insert(number, OpenRing { atom, order, offset });
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<MolGraph, SmilesError> {
        if let Some((_, at)) = self.pending {
            return Err(syntax("bond symbol without a following atom", at));
        }
        if let Some(open) = self.rings.values().next() {
            return Err(syntax("unclosed ring", open.offset));
        }
        if let Some(&(_, at)) = self.branches.last() {
            return Err(syntax("unclosed '('", at));
        }
        let atoms = self.atoms;
        let bonds = self
            .bonds
            .into_iter()
            .map(|(a, b, order)| {
                let order = order.unwrap_or(if atoms[a].aromatic && atoms[b].aromatic {
                    BondOrder::Aromatic
                } else {
                    BondOrder::Single
                });
                Bond::new(a, b, order)
            })
            .collect();
        Ok(MolGraph::from_parts(atoms, bonds)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bond_triples(g: &MolGraph) -> Vec<(usize, usize, BondOrder)> {
        g.bonds().iter().map(|b| (b.a, b.b, b.order)).collect()
    }

    #[test]
    fn ethanol() {
        let g = parse_smiles("CCO").unwrap();
        assert_eq!(g.atom_count(), 3);
        assert_eq!(
            bond_triples(&g),
            vec![(0, 1, BondOrder::Single), (1, 2, BondOrder::Single)]
        );
        let hs: Vec<u8> = g.atoms().iter().map(|a| a.h_count).collect();
        assert_eq!(hs, vec![3, 2, 1]);
    }

    #[test]
    fn cyclopropane() {
        let g = parse_smiles("C1CC1").unwrap();
        assert_eq!(g.atom_count(), 3);
        assert_eq!(g.bonds().len(), 3);
        assert!(g.bond_between(0, 2).is_some());
        assert!(g.atoms().iter().all(|a| a.h_count == 2));
    }

    #[test]
    fn benzene() {
        let g = parse_smiles("c1ccccc1").unwrap();
        assert_eq!(g.atom_count(), 6);
        assert!(g.atoms().iter().all(|a| a.aromatic && a.h_count == 1));
        assert_eq!(g.bonds().len(), 6);
        assert!(g.bonds().iter().all(|b| b.order == BondOrder::Aromatic));
    }

    #[test]
    fn branches_and_bond_symbols() {
        let g = parse_smiles("CC(=O)O").unwrap();
        assert_eq!(
            bond_triples(&g),
            vec![
                (0, 1, BondOrder::Single),
                (1, 2, BondOrder::Double),
                (1, 3, BondOrder::Single)
            ]
        );
        assert_eq!(g.atoms()[2].h_count, 0);
        assert_eq!(g.atoms()[3].h_count, 1);
        let n2 = parse_smiles("N#N").unwrap();
        assert_eq!(n2.atoms()[0].h_count, 0);
    }

    #[test]
    fn bracket_atoms() {
        let g = parse_smiles("C[N+](C)(C)C").unwrap();
        assert_eq!(g.atoms()[1].formal_charge, 1);
        assert_eq!(g.atoms()[1].h_count, 0);
        let g = parse_smiles("c1cc[nH]c1").unwrap();
        assert_eq!(g.atoms()[3].h_count, 1);
        assert!(g.atoms()[3].bracket);
        let g = parse_smiles("[O-]C=O").unwrap();
        assert_eq!(g.atoms()[0].formal_charge, -1);
        let g = parse_smiles("[CH2-2]").unwrap();
        assert_eq!(g.atoms()[0].formal_charge, -2);
        let g = parse_smiles("[NH4+]").unwrap();
        assert_eq!(g.atoms()[0].h_count, 4);
        assert_eq!(parse_smiles("[N--]").unwrap().atoms()[0].formal_charge, -2);
    }

    #[test]
    fn two_digit_ring_closures() {
        let a = parse_smiles("C%10CC%10").unwrap();
        let b = parse_smiles("C1CC1").unwrap();
        assert_eq!(a, b);
        let fused = parse_smiles("c1ccc2ccccc2c1").unwrap();
        assert_eq!(fused.bonds().len(), 11);
        assert!(fused.atoms().iter().filter(|a| a.h_count == 0).count() == 2);
    }

    #[test]
    fn ring_bond_symbol_on_either_side() {
        let a = parse_smiles("C=1CC1").unwrap();
        let b = parse_smiles("C1CC=1").unwrap();
        assert_eq!(a.bond_between(0, 2).unwrap().order, BondOrder::Double);
        assert_eq!(b.bond_between(0, 2).unwrap().order, BondOrder::Double);
        assert!(matches!(parse_smiles("C=1CC#1"), Err(SmilesError::Syntax { .. })));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(
            parse_smiles("C1CC"),
            Err(SmilesError::Syntax {
                message: "unclosed ring".into(),
                offset: 1
            })
        );
        assert!(matches!(parse_smiles("CC)C"), Err(SmilesError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_smiles("C(C"), Err(SmilesError::Syntax { offset: 1, .. })));
        assert!(matches!(parse_smiles("C="), Err(SmilesError::Syntax { .. })));
        assert!(matches!(parse_smiles("=C"), Err(SmilesError::Syntax { .. })));
        assert!(matches!(parse_smiles("C11"), Err(SmilesError::Syntax { .. })));
        assert!(matches!(parse_smiles("C12CC12"), Err(SmilesError::Syntax { .. })));
        assert!(matches!(parse_smiles("[C"), Err(SmilesError::Syntax { .. })));
        assert!(matches!(parse_smiles("C C"), Err(SmilesError::Syntax { offset: 1, .. })));
        assert_eq!(parse_smiles(""), Err(SmilesError::Empty));
    }

    #[test]
    fn unsupported_features() {
        let cases = [
            ("F/C=C/F", "/", 1),
            ("C[C@H](O)N", "@", 3),
            ("[13CH4]", "isotope 13", 1),
            ("C*", "*", 1),
            ("CC.O", ".", 2),
            ("[Na+]", "Na", 1),
            ("CXC", "X", 1),
            ("[H]", "H", 1),
            ("[se]1cccc1", "se", 1),
            ("[CH3:1]C", "atom class", 4),
        ];
        for (smiles, token, offset) in cases {
            assert_eq!(
                parse_smiles(smiles),
                Err(SmilesError::Unsupported {
                    token: token.into(),
                    offset
                }),
                "{smiles}"
            );
        }
    }

    #[test]
    fn valence_errors_name_the_atom() {
        let err = parse_smiles("CC(C)(C)(C)(C)C").unwrap_err();
        assert!(matches!(err, SmilesError::Graph(GraphError::Valence { atom: 1, .. })), "{err:?}");
        let err = parse_smiles("CF=C").unwrap_err();
        assert!(matches!(err, SmilesError::Graph(GraphError::Valence { atom: 1, .. })));
        let err = parse_smiles("C[NH3]C").unwrap_err();
        assert!(matches!(err, SmilesError::Graph(GraphError::Valence { atom: 1, .. })));
    }

    #[test]
    fn aromatic_heterocycles() {
        for s in ["c1ccncc1", "c1ccoc1", "c1ccsc1", "O=c1cccc[nH]1", "Cn1cnc2c1c(=O)n(C)c(=O)n2C"] {
            parse_smiles(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
        let pyridine = parse_smiles("c1ccncc1").unwrap();
        assert_eq!(pyridine.atoms()[3].h_count, 0);
        let furan = parse_smiles("c1ccoc1").unwrap();
        assert_eq!(furan.atoms()[3].h_count, 0);
        assert_eq!(furan.atoms()[0].h_count, 1);
    }
}
