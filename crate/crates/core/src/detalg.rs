//! Occupation-bitstring determinants over Kramers-paired spinor slots.
//!
//! Slot convention: pair p occupies slots 2p (unbarred) and 2p+1 (barred),
//! so a Kramers pair is one adjacent bit pair of a u64 mask and up to 32
//! pairs fit in a machine word. Determinants are stored slot-ascending;
//! every phase below is defined relative to that order.
//!
//! The elementary actions follow second quantization: a_q clears a slot
//! with phase (-1)^(occupied slots below), a+_p sets one with the same
//! rule. The per-pair time-reversal action is the term
//! a+_pbar a_p - a+_p a_pbar of the generator, and the full many-electron
//! time-reversal substitutes every occupied spinor (unbarred -> barred
//! with +, barred -> unbarred with -) followed by the reordering parity.

use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array1;
use num_complex::Complex;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// Hard limit on Kramers pairs: the occupation mask is one u64.
pub const MAX_PAIRS: u32 = 32;

/// One spinor slot addressed as (Kramers pair, barred?).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinorIndex {
    pub pair: u32,
    pub barred: bool,
}

impl SpinorIndex {
    pub fn new(pair: u32, barred: bool) -> Self {
        SpinorIndex { pair, barred }
    }

    /// Absolute slot: 2*pair for unbarred, 2*pair + 1 for barred.
    pub fn slot(&self) -> u32 {
        2 * self.pair + u32::from(self.barred)
    }

    pub fn from_slot(slot: u32) -> Self {
        SpinorIndex { pair: slot / 2, barred: slot % 2 == 1 }
    }

    /// The Kramers partner (same pair, opposite bar).
    pub fn partner(&self) -> Self {
        SpinorIndex { pair: self.pair, barred: !self.barred }
    }
}

impl fmt::Display for SpinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "{}\u{0304}", self.pair + 1)
        } else {
            write!(f, "{}", self.pair + 1)
        }
    }
}

/// Occupancy of exactly one member of a Kramers pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOccupation {
    Empty,
    /// Open shell; the flag tells whether the barred member is occupied.
    Open { barred: bool },
    Closed,
}

/// A Kramers-restricted Slater determinant as an occupation mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Determinant {
    occ: u64,
    n_pairs: u32,
}

impl Determinant {
    /// The vacuum over `n_pairs` Kramers pairs.
    pub fn empty(n_pairs: u32) -> Result<Self> {
        if n_pairs > MAX_PAIRS {
            return Err(Error::Capacity {
                what: "Kramers pairs",
                got: n_pairs as usize,
                cap: MAX_PAIRS as usize,
            });
        }
        Ok(Determinant { occ: 0, n_pairs })
    }

    /// Build from an arbitrary-order slot list. Returns the canonical
    /// determinant together with the parity of the sorting permutation.
    /// The list is read as a creation-operator string with the first slot
    /// outermost, so the loop applies it right to left.
    pub fn from_slots(n_pairs: u32, slots: &[u32]) -> Result<(Self, i8)> {
        let mut det = Determinant::empty(n_pairs)?;
        let mut phase = 1i8;
        for &s in slots.iter().rev() {
            let idx = SpinorIndex::from_slot(s);
            match det.create(idx)? {
                Some((d, p)) => {
                    det = d;
                    phase *= p;
                }
                None => {
                    return Err(Error::Contract(format!(
                        "slot {s} listed twice in determinant constructor"
                    )))
                }
            }
        }
        Ok((det, phase))
    }

    pub fn from_spinors(n_pairs: u32, spinors: &[SpinorIndex]) -> Result<(Self, i8)> {
        let slots: Vec<u32> = spinors.iter().map(|s| s.slot()).collect();
        Self::from_slots(n_pairs, &slots)
    }

    pub fn occ_mask(&self) -> u64 {
        self.occ
    }

    pub fn n_pairs(&self) -> u32 {
        self.n_pairs
    }

    /// Electron count N.
    pub fn electron_count(&self) -> u32 {
        self.occ.count_ones()
    }

    pub fn is_occupied(&self, s: SpinorIndex) -> bool {
        (self.occ >> s.slot()) & 1 == 1
    }

    pub fn pair_occupation(&self, pair: u32) -> PairOccupation {
        let bits = (self.occ >> (2 * pair)) & 0b11;
        match bits {
            0b00 => PairOccupation::Empty,
            0b01 => PairOccupation::Open { barred: false },
            0b10 => PairOccupation::Open { barred: true },
            _ => PairOccupation::Closed,
        }
    }

    /// Occupied slots in ascending order.
    pub fn slots(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.electron_count() as usize);
        let mut m = self.occ;
        while m != 0 {
            out.push(m.trailing_zeros());
            m &= m - 1;
        }
        out
    }

    /// Number of open-shell pairs N_O.
    pub fn open_count(&self) -> u32 {
        let unbarred = self.occ & 0x5555_5555_5555_5555;
        let barred = self.occ & 0xAAAA_AAAA_AAAA_AAAA;
        (unbarred ^ (barred >> 1)).count_ones()
    }

    /// Number of occupied barred slots among open shells.
    pub fn open_barred_count(&self) -> u32 {
        let unbarred = self.occ & 0x5555_5555_5555_5555;
        let barred = self.occ & 0xAAAA_AAAA_AAAA_AAAA;
        ((barred >> 1) & !unbarred).count_ones()
    }

    fn check_index(&self, s: SpinorIndex) -> Result<()> {
        if s.pair >= self.n_pairs {
            Err(Error::MalformedIndex { pair: s.pair, barred: s.barred, n_pairs: self.n_pairs })
        } else {
            Ok(())
        }
    }

    fn crossings_below(&self, slot: u32) -> u32 {
        (self.occ & ((1u64 << slot) - 1)).count_ones()
    }

    /// a_s: clear a slot. `None` when the slot is empty; otherwise the
    /// reduced determinant and the fermionic phase.
    pub fn annihilate(&self, s: SpinorIndex) -> Result<Option<(Determinant, i8)>> {
        self.check_index(s)?;
        let slot = s.slot();
        if (self.occ >> slot) & 1 == 0 {
            return Ok(None);
        }
        let phase = if self.crossings_below(slot) % 2 == 0 { 1 } else { -1 };
        Ok(Some((Determinant { occ: self.occ & !(1u64 << slot), n_pairs: self.n_pairs }, phase)))
    }

    /// a+_s: set a slot. `None` when already occupied (Pauli exclusion).
    pub fn create(&self, s: SpinorIndex) -> Result<Option<(Determinant, i8)>> {
        self.check_index(s)?;
        let slot = s.slot();
        if (self.occ >> slot) & 1 == 1 {
            return Ok(None);
        }
        let phase = if self.crossings_below(slot) % 2 == 0 { 1 } else { -1 };
        Ok(Some((Determinant { occ: self.occ | (1u64 << slot), n_pairs: self.n_pairs }, phase)))
    }

    /// One pair's term of the time-reversal generator,
    /// (a+_pbar a_p - a+_p a_pbar) applied to this determinant. Closed and
    /// empty pairs give `None` (both terms vanish).
    pub fn apply_k1(&self, pair: u32) -> Result<Option<(Determinant, i8)>> {
        let unbarred = SpinorIndex::new(pair, false);
        let barred = SpinorIndex::new(pair, true);
        self.check_index(barred)?;
        match self.pair_occupation(pair) {
            PairOccupation::Open { barred: false } => {
                let (d1, p1) = self.annihilate(unbarred)?.expect("open unbarred slot");
                let (d2, p2) = d1.create(barred)?.expect("barred slot free in open pair");
                Ok(Some((d2, p1 * p2)))
            }
            PairOccupation::Open { barred: true } => {
                let (d1, p1) = self.annihilate(barred)?.expect("open barred slot");
                let (d2, p2) = d1.create(unbarred)?.expect("unbarred slot free in open pair");
                Ok(Some((d2, -p1 * p2)))
            }
            _ => Ok(None),
        }
    }

    /// Full generator action, sum of [`apply_k1`](Self::apply_k1) over all
    /// pairs. Coefficients are exactly +-1; closed pairs drop out.
    pub fn apply_kplus(&self) -> SignedDetSum {
        let mut sum = SignedDetSum::new();
        for pair in 0..self.n_pairs {
            if let Some((d, p)) = self.apply_k1(pair).expect("pair index in range") {
                sum.add(d, i64::from(p));
            }
        }
        sum
    }

    /// Many-electron time reversal: substitute every occupied spinor
    /// (unbarred -> barred keeps the sign, barred -> unbarred flips it) and
    /// reorder to canonical form. Applying it twice gives (-1)^N.
    pub fn apply_k(&self) -> (Determinant, i8) {
        let slots = self.slots();
        let mut sign = 1i8;
        let mut imgs: Vec<u32> = Vec::with_capacity(slots.len());
        for s in slots {
            if s % 2 == 0 {
                imgs.push(s + 1);
            } else {
                imgs.push(s - 1);
                sign = -sign;
            }
        }
        // parity of the permutation sorting the image list
        for i in 0..imgs.len() {
            for j in (i + 1)..imgs.len() {
                if imgs[i] > imgs[j] {
                    sign = -sign;
                }
            }
        }
        let mut occ = 0u64;
        for s in imgs {
            occ |= 1u64 << s;
        }
        (Determinant { occ, n_pairs: self.n_pairs }, sign)
    }

    /// Paper-style label, e.g. `1 2̄ 3`. Machine form uses `~2` for barred.
    pub fn label(&self, machine: bool) -> String {
        let mut parts = Vec::new();
        for slot in self.slots() {
            let s = SpinorIndex::from_slot(slot);
            if machine {
                parts.push(if s.barred {
                    format!("~{}", s.pair + 1)
                } else {
                    format!("{}", s.pair + 1)
                });
            } else {
                parts.push(s.to_string());
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Determinant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(false))
    }
}

/// Integer-weighted formal sum of determinants; the carrier for operator
/// actions. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedDetSum {
    terms: BTreeMap<Determinant, i64>,
}

impl SignedDetSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, det: Determinant, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(det).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&det);
        }
    }

    pub fn coeff(&self, det: &Determinant) -> i64 {
        self.terms.get(det).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Determinant, i64)> {
        self.terms.iter().map(|(d, &c)| (d, c))
    }

    /// Apply the generator to every term, summing coefficients.
    pub fn apply_kplus(&self) -> SignedDetSum {
        let mut out = SignedDetSum::new();
        for (det, c) in self.iter() {
            for (d, c2) in det.apply_kplus().iter() {
                out.add(*d, c * c2);
            }
        }
        out
    }
}

/// A complex coefficient vector over an explicitly ordered determinant basis.
#[derive(Debug, Clone)]
pub struct StateVector<T: Scalar> {
    pub dets: Vec<Determinant>,
    pub coeffs: Array1<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    pub fn new(dets: Vec<Determinant>, coeffs: Array1<Complex<T>>) -> Result<Self> {
        if dets.len() != coeffs.len() {
            return Err(Error::Contract(format!(
                "basis has {} determinants but {} coefficients supplied",
                dets.len(),
                coeffs.len()
            )));
        }
        Ok(StateVector { dets, coeffs })
    }

    pub fn norm(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(n_pairs: u32, slots: &[u32]) -> Determinant {
        Determinant::from_slots(n_pairs, slots).unwrap().0
    }

    #[test]
    fn annihilate_examples() {
        // lowest occupied slot, no crossings
        let d = det(2, &[0, 2]);
        let (r, p) = d.annihilate(SpinorIndex::new(0, false)).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[2]), 1));
        // one occupied slot below slot 2
        let (r, p) = d.annihilate(SpinorIndex::new(1, false)).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[0]), -1));
        // unoccupied slot
        assert!(d.annihilate(SpinorIndex::new(0, true)).unwrap().is_none());
        // malformed index
        assert!(d.annihilate(SpinorIndex::new(2, false)).is_err());
    }

    #[test]
    fn create_examples() {
        let (r, p) = det(2, &[2]).create(SpinorIndex::new(0, false)).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[0, 2]), 1));
        let (r, p) = det(2, &[0]).create(SpinorIndex::new(1, true)).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[0, 3]), -1));
        assert!(det(2, &[0, 2]).create(SpinorIndex::new(0, false)).unwrap().is_none());
    }

    #[test]
    fn apply_k1_examples() {
        // Phi_12 -> +Phi_1bar2
        let (r, p) = det(2, &[0, 2]).apply_k1(0).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[1, 2]), 1));
        // Phi_1bar2 -> -Phi_12
        let (r, p) = det(2, &[1, 2]).apply_k1(0).unwrap().unwrap();
        assert_eq!((r, p), (det(2, &[0, 2]), -1));
        // closed pair drops out
        assert!(det(2, &[0, 1]).apply_k1(0).unwrap().is_none());
        // empty pair drops out
        assert!(det(2, &[0, 1]).apply_k1(1).unwrap().is_none());
    }

    #[test]
    fn apply_kplus_examples() {
        let s = det(2, &[0, 2]).apply_kplus();
        assert_eq!(s.coeff(&det(2, &[1, 2])), 1);
        assert_eq!(s.coeff(&det(2, &[0, 3])), 1);
        assert_eq!(s.len(), 2);

        // closed shell vanishes
        assert!(det(2, &[0, 1, 2, 3]).apply_kplus().is_empty());

        let s = det(2, &[1, 3]).apply_kplus();
        assert_eq!(s.coeff(&det(2, &[0, 3])), -1);
        assert_eq!(s.coeff(&det(2, &[1, 2])), -1);
    }

    #[test]
    fn apply_k_examples() {
        let (r, p) = det(2, &[0, 2]).apply_k();
        assert_eq!((r, p), (det(2, &[1, 3]), 1));
        let (r, p) = det(2, &[1, 3]).apply_k();
        assert_eq!((r, p), (det(2, &[0, 2]), 1));
        // closed pair maps to itself with +1
        let (r, p) = det(2, &[0, 1]).apply_k();
        assert_eq!((r, p), (det(2, &[0, 1]), 1));
    }

    #[test]
    fn open_shell_counters() {
        let d = det(3, &[0, 1, 2, 5]);
        assert_eq!(d.open_count(), 2);
        assert_eq!(d.open_barred_count(), 1);
        assert_eq!(d.pair_occupation(0), PairOccupation::Closed);
        assert_eq!(d.pair_occupation(1), PairOccupation::Open { barred: false });
        assert_eq!(d.pair_occupation(2), PairOccupation::Open { barred: true });
    }

    #[test]
    fn labels() {
        let d; // Phi_{1 2bar 3}
        d = det(3, &[0, 3, 4]);
        assert_eq!(d.label(true), "1 ~2 3");
        assert_eq!(d.label(false), "1 2\u{0304} 3");
    }

    #[test]
    fn constructor_phase_is_sort_parity() {
        // slots listed out of order: one transposition
        let (d, p) = Determinant::from_slots(2, &[2, 0]).unwrap();
        assert_eq!(d, det(2, &[0, 2]));
        assert_eq!(p, -1);
        let (_, p) = Determinant::from_slots(3, &[4, 0, 2]).unwrap();
        assert_eq!(p, 1); // cyclic, even
    }

    proptest! {
        #[test]
        fn create_then_annihilate_roundtrips(occ in 0u64..(1 << 12), slot in 0u32..12) {
            let d = Determinant { occ, n_pairs: 6 };
            let s = SpinorIndex::from_slot(slot);
            if let Some((d1, p1)) = d.create(s).unwrap() {
                let (d2, p2) = d1.annihilate(s).unwrap().unwrap();
                prop_assert_eq!(d2, d);
                prop_assert_eq!(p1 * p2, 1);
            }
        }

        #[test]
        fn creations_anticommute(occ in 0u64..(1 << 12), a in 0u32..12, b in 0u32..12) {
            prop_assume!(a != b);
            let d = Determinant { occ, n_pairs: 6 };
            let sa = SpinorIndex::from_slot(a);
            let sb = SpinorIndex::from_slot(b);
            let ab = d.create(sa).unwrap().and_then(|(d1, p1)| {
                d1.create(sb).unwrap().map(|(d2, p2)| (d2, p1 * p2))
            });
            let ba = d.create(sb).unwrap().and_then(|(d1, p1)| {
                d1.create(sa).unwrap().map(|(d2, p2)| (d2, p1 * p2))
            });
            match (ab, ba) {
                (Some((da, pa)), Some((db, pb))) => {
                    prop_assert_eq!(da, db);
                    prop_assert_eq!(pa, -pb);
                }
                (None, None) => {}
                _ => prop_assert!(false, "one order succeeded, the other failed"),
            }
        }

        #[test]
        fn time_reversal_squares_to_parity(occ in 0u64..(1 << 12)) {
            let d = Determinant { occ, n_pairs: 6 };
            let (d1, p1) = d.apply_k();
            let (d2, p2) = d1.apply_k();
            prop_assert_eq!(d2, d);
            let expect = if d.electron_count() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(p1 * p2, expect);
        }

        #[test]
        fn generator_preserves_counts_and_flips_parity(occ in 0u64..(1 << 12)) {
            let d = Determinant { occ, n_pairs: 6 };
            for (img, c) in d.apply_kplus().iter() {
                prop_assert!(c == 1 || c == -1);
                prop_assert_eq!(img.electron_count(), d.electron_count());
                prop_assert_eq!(img.open_count(), d.open_count());
                let flip = (img.open_barred_count() as i64 - d.open_barred_count() as i64).abs();
                prop_assert_eq!(flip, 1);
            }
        }
    }
}
