//! Local invariants: Hilbert symbols at every place of Q and the non-dyadic places of
//! Q(sqrt 5), Hasse invariants as ramification sets, and the weak Hasse-Minkowski test.

mod equivalence;
mod k5;
mod rational;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::exact::PrimeIdeal;

pub use equivalence::{
    compare_forms, equivalent, equivalent_k5, equivalent_q, invariants, FormInvariants, Invariant,
};
pub use k5::{hasse_k5, hasse_product_k5, hilbert_k5, relevant_places_k5, residue_square};
pub use rational::{
    hasse_product_q, hasse_q, hilbert_q, is_local_square_q, legendre, relevant_places_q,
};

/// Place of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceQ {
    Real,
    Prime(u64),
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Real => write!(f, "real"),
            PlaceQ::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Place of Q(sqrt 5). `Dyadic` is the single prime above 2, which is inert.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceK5 {
    RealIdentity,
    RealTau,
    Prime(PrimeIdeal),
    Dyadic,
}

impl fmt::Display for PlaceK5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceK5::RealIdentity => write!(f, "real"),
            PlaceK5::RealTau => write!(f, "real-tau"),
            PlaceK5::Prime(q) => write!(f, "pi:{}", q.generator),
            PlaceK5::Dyadic => write!(f, "dyadic"),
        }
    }
}

/// Finite set of places where a quaternion algebra or Hasse product is nontrivial.
/// Hilbert reciprocity makes its cardinality even.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamSet<P: Ord> {
    places: BTreeSet<P>,
}

impl<P: Ord> Default for RamSet<P> {
    fn default() -> Self {
        RamSet {
            places: BTreeSet::new(),
        }
    }
}

impl<P: Ord> RamSet<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: P) -> bool {
        self.places.insert(p)
    }

    pub fn contains(&self, p: &P) -> bool {
        self.places.contains(p)
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &P> {
        self.places.iter()
    }
}

impl<P: Ord> FromIterator<P> for RamSet<P> {
    fn from_iter<I: IntoIterator<Item = P>>(iter: I) -> Self {
        RamSet {
            places: iter.into_iter().collect(),
        }
    }
}

impl<P: Ord + fmt::Display> fmt::Display for RamSet<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<P: Ord + fmt::Display> Serialize for RamSet<P> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.places.iter().map(|p| p.to_string()))
    }
}
