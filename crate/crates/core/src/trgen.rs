//! Open-shell determinant bases and dense matrices of the time-reversal
//! operators.
//!
//! The generator flips exactly one open shell per term, so it maps the
//! even-barred-parity branch of a basis onto the odd one and vice versa.
//! Matrices are therefore assembled over the concatenated even+odd space
//! (even first); the square is block-diagonal in parity and its blocks are
//! what gets diagonalized downstream. All entries are exact small integers,
//! built in i64 and only then cast to the floating scalar.

use std::collections::{BTreeSet, HashMap};

use ndarray::{s, Array1, Array2};
use num_complex::Complex;

use crate::detalg::{Determinant, SignedDetSum, SpinorIndex, StateVector};
use crate::error::Error;
use crate::mat;
use crate::report::CheckReport;
use crate::scalar::{cast, Scalar};
use crate::Result;

/// Default cap on the number of open shells (2^(N_O) determinants).
pub const OPEN_SHELL_CAP: u32 = 10;

/// Barred-count parity of a determinant's open shells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(n: u32) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Contract(format!("unknown parity `{other}`"))),
        }
    }
}

/// One parity branch of the open-shell determinant manifold.
#[derive(Debug, Clone)]
pub struct OpenShellBasis {
    pub n_open: u32,
    pub parity: Parity,
    pub dets: Vec<Determinant>,
    pub closed_pairs: BTreeSet<u32>,
    /// Pair indices hosting the open shells, ascending.
    pub open_pairs: Vec<u32>,
}

impl OpenShellBasis {
    pub fn len(&self) -> usize {
        self.dets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dets.is_empty()
    }

    /// Total electron count (open shells + closed core).
    pub fn electron_count(&self) -> u32 {
        self.n_open + 2 * self.closed_pairs.len() as u32
    }
}

fn build_det(
    n_pairs: u32,
    open_pairs: &[u32],
    closed_pairs: &BTreeSet<u32>,
    barred: &[usize],
) -> Determinant {
    let mut slots: Vec<u32> = Vec::new();
    for &p in closed_pairs {
        slots.push(2 * p);
        slots.push(2 * p + 1);
    }
    for (i, &p) in open_pairs.iter().enumerate() {
        let is_barred = barred.contains(&i);
        slots.push(SpinorIndex::new(p, is_barred).slot());
    }
    Determinant::from_slots(n_pairs, &slots).expect("slots are distinct and in range").0
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance lexicographically
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Enumerate one parity branch with an explicit cap.
///
/// Ordering: ascending barred count; within one count, lexicographically
/// ascending sets of barred open-shell positions. Open shells sit on the
/// lowest pair indices not claimed by `closed_pairs`.
pub fn enumerate_basis_capped(
    n_open: u32,
    parity: Parity,
    closed_pairs: &BTreeSet<u32>,
    cap: u32,
) -> Result<OpenShellBasis> {
    if n_open > cap {
        return Err(Error::Capacity {
            what: "open shells",
            got: n_open as usize,
            cap: cap as usize,
        });
    }
    let mut open_pairs = Vec::with_capacity(n_open as usize);
    let mut candidate = 0u32;
    while open_pairs.len() < n_open as usize {
        if !closed_pairs.contains(&candidate) {
            open_pairs.push(candidate);
        }
        candidate += 1;
    }
    let n_pairs = open_pairs
        .iter()
        .copied()
        .chain(closed_pairs.iter().copied())
        .max()
        .map_or(1, |m| m + 1);

    let mut dets = Vec::new();
    if n_open == 0 {
        if parity == Parity::Even {
            dets.push(build_det(n_pairs, &open_pairs, closed_pairs, &[]));
        }
    } else {
        for nb in 0..=n_open as usize {
            if Parity::of_count(nb as u32) != parity {
                continue;
            }
            for comb in combinations(n_open as usize, nb) {
                dets.push(build_det(n_pairs, &open_pairs, closed_pairs, &comb));
            }
        }
    }
    Ok(OpenShellBasis { n_open, parity, dets, closed_pairs: closed_pairs.clone(), open_pairs })
}

/// Enumerate one parity branch under the default cap.
pub fn enumerate_basis(
    n_open: u32,
    parity: Parity,
    closed_pairs: &BTreeSet<u32>,
) -> Result<OpenShellBasis> {
    enumerate_basis_capped(n_open, parity, closed_pairs, OPEN_SHELL_CAP)
}

/// Both parity branches concatenated (even first) with a lookup index.
#[derive(Debug, Clone)]
pub struct KramersSpace {
    pub even: OpenShellBasis,
    pub odd: OpenShellBasis,
    pub dets: Vec<Determinant>,
    index: HashMap<u64, usize>,
}

impl KramersSpace {
    pub fn new(n_open: u32, closed_pairs: &BTreeSet<u32>) -> Result<Self> {
        let even = enumerate_basis(n_open, Parity::Even, closed_pairs)?;
        let odd = enumerate_basis(n_open, Parity::Odd, closed_pairs)?;
        let dets: Vec<Determinant> =
            even.dets.iter().chain(odd.dets.iter()).copied().collect();
        let index = dets.iter().enumerate().map(|(i, d)| (d.occ_mask(), i)).collect();
        Ok(KramersSpace { even, odd, dets, index })
    }

    pub fn n_open(&self) -> u32 {
        self.even.n_open
    }

    pub fn dim(&self) -> usize {
        self.dets.len()
    }

    pub fn electron_count(&self) -> u32 {
        self.even.electron_count()
    }

    pub fn position(&self, det: &Determinant) -> Option<usize> {
        self.index.get(&det.occ_mask()).copied()
    }

    pub fn branch(&self, parity: Parity) -> &OpenShellBasis {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Index range of one parity block inside the concatenated space.
    pub fn block_range(&self, parity: Parity) -> std::ops::Range<usize> {
        match parity {
            Parity::Even => 0..self.even.len(),
            Parity::Odd => self.even.len()..self.dim(),
        }
    }

    pub fn parity_of_index(&self, i: usize) -> Parity {
        if i < self.even.len() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// An antilinear operator: a real matrix plus a conjugation flag. Acting on
/// a coefficient vector c gives mat * conj(c) when `conjugates` is set.
#[derive(Debug, Clone)]
pub struct AntilinearOp<T: Scalar> {
    pub mat: Array2<T>,
    pub conjugates: bool,
}

impl<T: Scalar> AntilinearOp<T> {
    pub fn apply(&self, coeffs: &Array1<Complex<T>>) -> Array1<Complex<T>> {
        let v = if self.conjugates { coeffs.mapv(|c| c.conj()) } else { coeffs.clone() };
        mat::real_mat_complex_vec(&self.mat.view(), &v)
    }

    pub fn apply_state(&self, state: &StateVector<T>) -> StateVector<T> {
        StateVector { dets: state.dets.clone(), coeffs: self.apply(&state.coeffs) }
    }
}

fn integer_matrix_from_action(
    space: &KramersSpace,
    action: impl Fn(&Determinant) -> SignedDetSum,
) -> Array2<i64> {
    let n = space.dim();
    let mut m = Array2::<i64>::zeros((n, n));
    for (j, det) in space.dets.iter().enumerate() {
        for (img, c) in action(det).iter() {
            let i = space
                .position(img)
                .expect("operator action stays inside the enumerated space");
            m[(i, j)] += c;
        }
    }
    m
}

fn cast_matrix<T: Scalar>(m: &Array2<i64>) -> Array2<T> {
    m.mapv(|x| cast::<T>(x as f64))
}

/// Dense matrix of the generator over the concatenated even+odd space.
/// Antisymmetric with exactly N_O entries of +-1 per column.
pub fn build_kplus<T: Scalar>(space: &KramersSpace) -> AntilinearOp<T> {
    let m = integer_matrix_from_action(space, Determinant::apply_kplus);
    debug_assert_eq!(m.t().to_owned(), m.mapv(|x| -x));
    AntilinearOp { mat: cast_matrix(&m), conjugates: true }
}

/// Dense matrix of the full time-reversal operator: a signed permutation
/// mapping each determinant onto its Kramers partner.
pub fn build_k<T: Scalar>(space: &KramersSpace) -> AntilinearOp<T> {
    let m = integer_matrix_from_action(space, |d| {
        let (img, phase) = d.apply_k();
        let mut s = SignedDetSum::new();
        s.add(img, i64::from(phase));
        s
    });
    AntilinearOp { mat: cast_matrix(&m), conjugates: true }
}

fn kplus_squared_integer(space: &KramersSpace) -> Array2<i64> {
    let n = space.dim();
    let mut m = Array2::<i64>::zeros((n, n));
    for (j, det) in space.dets.iter().enumerate() {
        let once = det.apply_kplus();
        for (img, c) in once.apply_kplus().iter() {
            let i = space.position(img).expect("generator action closed over the space");
            m[(i, j)] += c;
        }
    }
    m
}

/// Matrix of the squared generator over the full even+odd space. Asserts
/// the parity block structure: every cross-parity entry is exactly zero.
pub fn build_kplus2_full<T: Scalar>(space: &KramersSpace) -> Array2<T> {
    let m = kplus_squared_integer(space);
    let ne = space.even.len();
    for i in 0..space.dim() {
        for j in 0..space.dim() {
            if (i < ne) != (j < ne) {
                assert_eq!(m[(i, j)], 0, "cross-parity entry must vanish exactly");
            }
        }
    }
    cast_matrix(&m)
}

/// One parity block of the squared generator. Real symmetric with every
/// diagonal entry equal to -N_O.
pub fn build_kplus2<T: Scalar>(space: &KramersSpace, parity: Parity) -> Array2<T> {
    let full = kplus_squared_integer(space);
    let r = space.block_range(parity);
    cast_matrix(&full.slice(s![r.clone(), r]).to_owned())
}

/// Report of the exponential-map verification.
#[derive(Debug, Clone)]
pub struct ExpMapReport {
    pub half_turn: CheckReport,
    pub full_turn: CheckReport,
}

impl ExpMapReport {
    pub fn passed(&self) -> bool {
        self.half_turn.passed && self.full_turn.passed
    }
}

/// Verify expm((pi/2) K+) = K and expm(pi K+) = (-1)^N I on the
/// coefficient space, where both sides act through real matrices.
pub fn verify_exp_map<T: Scalar>(space: &KramersSpace, tolerance: T) -> ExpMapReport {
    let kplus = build_kplus::<T>(space);
    let k = build_k::<T>(space);
    let n = space.dim();

    let half = cast::<T>(std::f64::consts::FRAC_PI_2);
    let e_half = mat::expm(&kplus.mat.mapv(|x| x * half).view());
    let dev_half = mat::max_abs(&(&e_half - &k.mat).view());
    let mut half_turn = CheckReport::new(
        "expm((pi/2) K+) = K",
        dev_half.to_f64().unwrap_or(f64::INFINITY),
        tolerance.to_f64().unwrap_or(0.0),
    );
    if !half_turn.passed {
        half_turn = attach_worst_entries(half_turn, &(&e_half - &k.mat), space);
    }

    let pi = cast::<T>(std::f64::consts::PI);
    let e_full = mat::expm(&kplus.mat.mapv(|x| x * pi).view());
    let sign = if space.electron_count() % 2 == 0 { T::one() } else { -T::one() };
    let target = mat::identity::<T>(n).mapv(|x| x * sign);
    let dev_full = mat::max_abs(&(&e_full - &target).view());
    let mut full_turn = CheckReport::new(
        "expm(pi K+) = (-1)^N I",
        dev_full.to_f64().unwrap_or(f64::INFINITY),
        tolerance.to_f64().unwrap_or(0.0),
    );
    if !full_turn.passed {
        full_turn = attach_worst_entries(full_turn, &(&e_full - &target), space);
    }

    ExpMapReport { half_turn, full_turn }
}

fn attach_worst_entries<T: Scalar>(
    mut report: CheckReport,
    diff: &Array2<T>,
    space: &KramersSpace,
) -> CheckReport {
    let mut worst: Vec<(T, usize, usize)> = Vec::new();
    for ((i, j), &v) in diff.indexed_iter() {
        worst.push((v.abs(), i, j));
    }
    worst.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    for (v, i, j) in worst.into_iter().take(5) {
        report = report.with_detail(format!(
            "({}, {}) deviates by {v}: <{}|...|{}>",
            i,
            j,
            space.dets[i].label(false),
            space.dets[j].label(false)
        ));
    }
    report
}

/// Odd-branch determinants reordered as time-reversal images of the even
/// branch. In this ordering the two parity blocks of the squared generator
/// coincide entry-for-entry when the electron count is odd.
pub fn odd_block_in_k_image_order<T: Scalar>(space: &KramersSpace) -> Array2<T> {
    let full = kplus_squared_integer(space);
    let ne = space.even.len();
    let perm: Vec<usize> = space
        .even
        .dets
        .iter()
        .map(|d| {
            let (img, _) = d.apply_k();
            space.position(&img).expect("Kramers partner enumerated") - ne
        })
        .collect();
    let odd = full.slice(s![ne.., ne..]);
    let mut out = Array2::<i64>::zeros((perm.len(), perm.len()));
    for (i, &pi) in perm.iter().enumerate() {
        for (j, &pj) in perm.iter().enumerate() {
            out[(i, j)] = odd[(pi, pj)];
        }
    }
    cast_matrix(&out)
}
