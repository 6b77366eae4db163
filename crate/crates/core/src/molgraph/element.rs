use std::fmt;

use thiserror::Error;

use super::{AtomRecord, BondOrder};

/// Supported heavy elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    B,
    C,
    N,
    O,
    P,
    S,
    F,
    Cl,
    Br,
    I,
}

impl Element {
    pub const ALL: [Element; 10] = [
        Element::B,
        Element::C,
        Element::N,
        Element::O,
        Element::P,
        Element::S,
        Element::F,
        Element::Cl,
        Element::Br,
        Element::I,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Element::B => "B",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::P => "P",
            Element::S => "S",
            Element::F => "F",
            Element::Cl => "Cl",
            Element::Br => "Br",
            Element::I => "I",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.symbol() == symbol)
    }

    pub fn atomic_number(self) -> u8 {
        match self {
            Element::B => 5,
            Element::C => 6,
            Element::N => 7,
            Element::O => 8,
            Element::P => 15,
            Element::S => 16,
            Element::F => 9,
            Element::Cl => 17,
            Element::Br => 35,
            Element::I => 53,
        }
    }

    /// Whether the element has a lowercase aromatic form.
    pub fn can_be_aromatic(self) -> bool {
        matches!(
            self,
            Element::B | Element::C | Element::N | Element::O | Element::P | Element::S
        )
    }

    /// Allowed valences of the neutral atom, lowest first.
    pub fn valences(self) -> &'static [u8] {
        match self {
            Element::B => &[3],
            Element::C => &[4],
            Element::N => &[3],
            Element::O => &[2],
            Element::P => &[3, 5],
            Element::S => &[2, 4, 6],
            Element::F | Element::Cl | Element::Br | Element::I => &[1],
        }
    }

    /// Allowed valences shifted by formal charge: carbon loses one per unit
    /// of charge, boron behaves like its isoelectronic neighbour, and
    /// N/O/P/S/halogens gain one per positive charge.
    fn charged_valences(self, charge: i8) -> Vec<u8> {
        let shift = |v: u8| -> Option<u8> {
            let v = i16::from(v);
            let c = i16::from(charge);
            let shifted = match self {
                Element::C => v - c.abs(),
                Element::B => v - c,
                _ => v + c,
            };
            u8::try_from(shifted).ok()
        };
        self.valences().iter().filter_map(|&v| shift(v)).collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValenceError {
    #[error("{element} with charge {charge} cannot carry bond load {load}")]
    Exceeded { element: Element, charge: i8, load: u32 },
    #[error("{0} cannot be aromatic")]
    NotAromatic(Element),
}

/// Bond load of an atom: `(plain, kekule)`.
///
/// Non-aromatic atoms use `ceil(sum of orders)` with aromatic bonds as 1.5,
/// and both values coincide. Aromatic atoms count each aromatic bond as 1
/// (`plain`) and add the one double bond a Kekule structure would give them
/// (`kekule`).
fn bond_load(atom: &AtomRecord, orders: &[BondOrder]) -> (u32, u32) {
    if atom.aromatic {
        let aromatic = orders.iter().filter(|&&o| o == BondOrder::Aromatic).count() as u32;
        let other: u32 = orders
            .iter()
            .filter(|&&o| o != BondOrder::Aromatic)
            .map(|o| o.value() as u32)
            .sum();
        let plain = aromatic + other;
        (plain, plain + u32::from(aromatic > 0))
    } else {
        let load = orders.iter().map(|o| o.value()).sum::<f64>().ceil() as u32;
        (load, load)
    }
}

/// Implicit hydrogen count for an organic-subset atom.
///
/// Non-aromatic atoms take the smallest allowed valence that fits the load.
/// Aromatic atoms first try the Kekule load against the default valence
/// (benzene `c` gets one H, pyridine `n` none), then the plain load for
/// lone-pair donors such as furan `o` or thiophene `s`, then any higher
/// valence.
pub(super) fn implicit_hydrogens(atom: &AtomRecord, orders: &[BondOrder]) -> Result<u8, ValenceError> {
    if atom.aromatic && !atom.element.can_be_aromatic() {
        return Err(ValenceError::NotAromatic(atom.element));
    }
    let valences = atom.element.charged_valences(atom.formal_charge);
    let (plain, kekule) = bond_load(atom, orders);
    let exceeded = ValenceError::Exceeded {
        element: atom.element,
        charge: atom.formal_charge,
        load: kekule,
    };
    let fit = |load: u32| valences.iter().map(|&v| u32::from(v)).find(|&v| v >= load);
    let h = if atom.aromatic {
        let default = valences.first().map_or(0, |&v| u32::from(v));
        if kekule <= default {
            default - kekule
        } else if plain <= default {
            default - plain
        } else {
            fit(kekule).ok_or(exceeded)? - kekule
        }
    } else {
        fit(kekule).ok_or(exceeded)? - kekule
    };
    Ok(h as u8)
}

/// Valence check for a bracket atom with an explicit hydrogen count.
pub(super) fn check_explicit(atom: &AtomRecord, orders: &[BondOrder]) -> Result<(), ValenceError> {
    if atom.aromatic && !atom.element.can_be_aromatic() {
        return Err(ValenceError::NotAromatic(atom.element));
    }
    let (plain, _) = bond_load(atom, orders);
    let load = plain + u32::from(atom.h_count);
    let max = atom
        .element
        .charged_valences(atom.formal_charge)
        .into_iter()
        .max()
        .map_or(0, u32::from);
    if load > max {
        return Err(ValenceError::Exceeded {
            element: atom.element,
            charge: atom.formal_charge,
            load,
        });
    }
    Ok(())
}
