//! Closed forms and recurrences in `q`, evaluated with exact integers.
//!
//! `q` is a plain integer parameter here, not a field element. Formulas
//! whose derivation depends on the field structure (group orders, the
//! isotropic table) additionally require `q` to be a prime power.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::FormKind;
use crate::error::{Error, Result};
use crate::gf::PrimePower;
use crate::treepoly::TreePoly;

fn qi(q: u64) -> BigInt {
    BigInt::from(q)
}

fn pow(q: u64, e: u64) -> BigInt {
    qi(q).pow(e as u32)
}

fn to_nat(v: BigInt, what: &str) -> BigUint {
    v.to_biguint()
        .unwrap_or_else(|| panic!("{what} evaluated to a negative number"))
}

/// `(q - 1)(q^3 - 1) ... (q^top - 1)` over odd exponents; empty below 1.
fn odd_product(q: u64, top: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = 1;
    while j <= top {
        acc *= pow(q, j as u64) - 1;
        j += 2;
    }
    acc
}

/// `(q^2 - 1)(q^4 - 1) ... (q^{2 top} - 1)`.
fn even_product(q: u64, top: u64) -> BigInt {
    (1..=top).map(|i| pow(q, 2 * i) - 1).product()
}

/// `g_{K_n}(q)`.
pub fn g_complete(n: usize, q: u64) -> BigUint {
    let m = (n / 2) as u64;
    let lead = if n.is_multiple_of(2) { m * m.saturating_sub(1) } else { m * (m + 1) };
    to_nat(pow(q, lead) * odd_product(q, 2 * m as i64 - 1), "g_complete")
}

/// `h(n, r)`: symmetric `n x n` matrices of rank `r`.
pub fn macwilliams_h(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let s = (r / 2) as u64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=s {
        num *= pow(q, 2 * i);
        den *= pow(q, 2 * i) - 1;
    }
    for i in 0..r as u64 {
        num *= pow(q, n as u64 - i) - 1;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "rank census is not integral");
    to_nat(quot, "macwilliams_h")
}

/// `h(n, .)` for `r = 0..=n`.
pub fn macwilliams_profile(n: usize, q: u64) -> Vec<BigUint> {
    (0..=n).map(|r| macwilliams_h(n, r, q)).collect()
}

/// One step of the rank recurrence with `q^top` in the last coefficient:
/// `out[r] = q^r h[r] + (q-1) q^{r-1} h[r-1] + (q^top - q^{r-1}) h[r-2]`.
fn rank_step(h: &[BigUint], top: u64, q: u64) -> Vec<BigUint> {
    let get = |i: usize| h.get(i).map(|v| BigInt::from(v.clone())).unwrap_or_default();
    (0..=h.len())
        .map(|r| {
            let mut t = pow(q, r as u64) * get(r);
            if r >= 1 {
                t += (qi(q) - 1) * pow(q, r as u64 - 1) * get(r - 1);
            }
            if r >= 2 {
                t += (pow(q, top) - pow(q, r as u64 - 1)) * get(r - 2);
            }
            to_nat(t, "rank recurrence")
        })
        .collect()
}

/// `h(n, .)` to `h(n + 1, .)`. The input has length `n + 1`.
pub fn macwilliams_step(profile: &[BigUint], n: usize, q: u64) -> Vec<BigUint> {
    assert_eq!(profile.len(), n + 1, "profile for size n has n + 1 entries");
    rank_step(profile, n as u64 + 1, q)
}

/// `h(G, .)` to `h(G*, .)` where `G*` adds an apex to the `n_g`-vertex
/// graph `G`. The input has length `n_g`.
pub fn apex_step(profile: &[BigUint], n_g: usize, q: u64) -> Vec<BigUint> {
    assert_eq!(profile.len(), n_g, "profile of an n-vertex graph has n entries");
    rank_step(profile, n_g as u64, q)
}

/// Rank profile of `K_n - K_k` rooted at an apex, built from the diagonal
/// base case `K_{k+1} - K_k` by adding apexes.
pub fn complete_minus_clique_profile(n: usize, k: usize, q: u64) -> Result<Vec<BigUint>> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need n > k >= 1, got n={n} k={k}")));
    }
    let mut h: Vec<BigUint> = (0..=k)
        .map(|r| {
            let binom = (0..r).fold(BigUint::one(), |acc, i| acc * (k - i) / (i + 1));
            binom * BigUint::from(q.saturating_sub(1)).pow(r as u32)
        })
        .collect();
    for vertices in k + 1..n {
        h = apex_step(&h, vertices, q);
    }
    Ok(h)
}

/// `g_{K_n - K_k}(q)` from the apex pipeline.
pub fn g_complete_minus_clique(n: usize, k: usize, q: u64) -> Result<BigUint> {
    Ok(complete_minus_clique_profile(n, k, q)?.pop().expect("nonempty"))
}

/// Integer Laurent polynomial in `q`, exponent to coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Laurent(BTreeMap<i64, BigInt>);

impl Laurent {
    fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut l = Laurent::default();
        for &(c, e) in terms {
            l.add_term(e, BigInt::from(c));
        }
        l
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let slot = self.0.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&e1, c1) in &self.0 {
            for (&e2, c2) in &other.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    fn odd_product(top: i64) -> Laurent {
        let mut acc = Laurent::from_terms(&[(1, 0)]);
        let mut j = 1;
        while j <= top {
            acc = acc.mul(&Laurent::from_terms(&[(1, j), (-1, 0)]));
            j += 2;
        }
        acc
    }

    fn min_exponent(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    fn coefficients(&self) -> Vec<BigInt> {
        let top = self.0.keys().next_back().copied().unwrap_or(0).max(0) as usize;
        let mut v = vec![BigInt::zero(); top + 1];
        for (&e, c) in &self.0 {
            v[e as usize] = c.clone();
        }
        v
    }
}

/// Evaluates an ascending integer coefficient list at `q`.
pub fn eval_int_poly(coeffs: &[BigInt], q: u64) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * qi(q) + c)
}

/// Coefficients (ascending) of the conjectured `g_{K_n - K_k}` for
/// `k in {3, 4, 5}`, read as an exact Laurent expansion. Products of the
/// form `(q-1)(q^3-1)...(q^t-1)` are empty when `t < 1`.
pub fn conjecture_knk_poly(n: usize, k: usize) -> Result<Vec<BigInt>> {
    let ambiguous = |why: String| Err(Error::BoundaryAmbiguous(why));
    if !(3..=5).contains(&k) {
        return Err(Error::InvalidParameter(format!("conjecture covers k = 3, 4, 5, got {k}")));
    }
    let m = (n / 2) as i64;
    let even = n.is_multiple_of(2);
    let min_m = match (even, k) {
        (true, 3) | (false, 3) | (false, 4) => 2,
        _ => 3,
    };
    if m < min_m {
        return ambiguous(format!("K_{n} - K_{k} needs m >= {min_m}, got m = {m}"));
    }
    if n <= k {
        return Err(Error::InvalidParameter(format!("need n > k, got n={n} k={k}")));
    }
    let (lead, top, tail): (i64, i64, Vec<(i64, i64)>) = match (even, k) {
        (true, 3) => (
            m * (m - 1),
            2 * m - 5,
            vec![(1, 4 * m - 7), (-4, 2 * m - 4), (3, 2 * m - 5), (-1, 2 * m - 6), (1, 0)],
        ),
        (false, 3) => (m * m + m - 3, 2 * m - 3, vec![(1, 2 * m - 1), (-3, 1), (2, 0)]),
        (true, 4) => (
            m * (m - 1),
            2 * m - 5,
            vec![(1, 4 * m - 10), (-7, 2 * m - 6), (8, 2 * m - 7), (-3, 2 * m - 8), (1, 0)],
        ),
        (false, 4) => (
            m * m + m - 4,
            2 * m - 5,
            vec![
                (1, 4 * m - 6),
                (-8, 2 * m - 3),
                (9, 2 * m - 4),
                (-4, 2 * m - 5),
                (1, 2 * m - 6),
                (4, 1),
                (-3, 0),
            ],
        ),
        (true, 5) => (
            m * (m - 1),
            2 * m - 7,
            vec![
                (1, 6 * m - 19),
                (-16, 4 * m - 14),
                (25, 4 * m - 15),
                (-16, 4 * m - 16),
                (5, 4 * m - 17),
                (-1, 4 * m - 18),
                (1, 2 * m - 6),
                (11, 2 * m - 8),
                (-15, 2 * m - 9),
                (6, 2 * m - 10),
                (-1, 0),
            ],
        ),
        (false, 5) => (
            m * m + m - 5,
            2 * m - 5,
            vec![
                (1, 4 * m - 9),
                (-15, 2 * m - 5),
                (24, 2 * m - 6),
                (-15, 2 * m - 7),
                (4, 2 * m - 8),
                (5, 1),
                (-4, 0),
            ],
        ),
        _ => unreachable!(),
    };
    let expr = Laurent::from_terms(&[(1, lead)])
        .mul(&Laurent::odd_product(top))
        .mul(&Laurent::from_terms(&tail));
    match expr.min_exponent() {
        Some(e) if e < 0 => ambiguous(format!("K_{n} - K_{k}: expansion keeps the power q^{e}")),
        _ => Ok(expr.coefficients()),
    }
}

/// Conjectured `g_{K_n - K_k}(q)` for `k in {3, 4, 5}`.
pub fn conjecture_knk(n: usize, k: usize, q: u64) -> Result<BigUint> {
    let coeffs = conjecture_knk_poly(n, k)?;
    Ok(to_nat(eval_int_poly(&coeffs, q), "conjecture_knk"))
}

/// `g_{K_n - K_{1,s}}(q)`: `K_n` with `s` edges at one vertex removed,
/// `0 <= s <= n - 2`.
pub fn g_minus_star(n: usize, s: usize, q: u64) -> Result<BigUint> {
    if n < 2 || s > n - 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and s <= n - 2, got n={n} s={s}")));
    }
    let m = (n / 2) as u64;
    let s64 = s as u64;
    let v = if n % 2 == 1 {
        pow(q, m * m + m - s64 - 1)
            * odd_product(q, 2 * m as i64 - 3)
            * (pow(q, 2 * m) - pow(q, s64) - qi(q) + 1)
    } else {
        pow(q, m * (m - 1)) * odd_product(q, 2 * m as i64 - 3) * (pow(q, 2 * m - 1 - s64) - 1)
    };
    Ok(to_nat(v, "g_minus_star"))
}

/// `g_{C_n}(q)` or `f_{C_n}(q)`.
pub fn cycle_counts(n: usize, q: u64, kind: TreePoly) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 2, got {n}")));
    }
    let q1: BigInt = qi(q) - 1;
    let v = match kind {
        TreePoly::P => pow(q, n as u64 - 1) * &q1,
        TreePoly::Q => {
            let mut acc = BigInt::from(n) * q1.pow(n as u32 - 1);
            for i in 1..=n {
                let t = q1.pow(i as u32);
                if (n - i).is_multiple_of(2) {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        }
    };
    Ok(to_nat(v, "cycle_counts"))
}

/// Groups whose orders enter the symmetric-matrix count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `GL(n, q)`.
    Gl,
    /// Stabilizer of the `+` form (odd `q`, or even `q` with even `n`).
    OmegaPlus,
    /// Stabilizer of the `-` form (odd `q`, or even `q` with even `n`).
    OmegaMinus,
    /// Stabilizer of the identity form for even `q` and odd `n`.
    OmegaPlain,
}

impl GroupKind {
    pub fn for_form(form: FormKind) -> Self {
        match form {
            FormKind::Plus => GroupKind::OmegaPlus,
            FormKind::Minus => GroupKind::OmegaMinus,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Gl => "gl",
            GroupKind::OmegaPlus => "omega-plus",
            GroupKind::OmegaMinus => "omega-minus",
            GroupKind::OmegaPlain => "omega-plain",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "gl" => Ok(GroupKind::Gl),
            "omega-plus" => Ok(GroupKind::OmegaPlus),
            "omega-minus" => Ok(GroupKind::OmegaMinus),
            "omega-plain" => Ok(GroupKind::OmegaPlain),
            other => Err(Error::InvalidParameter(format!("unknown group kind {other:?}"))),
        }
    }
}

/// `#GL(n, q) = (q^n - 1)(q^n - q) ... (q^n - q^{n-1})`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let qn = pow(q, n as u64);
    to_nat((0..n as u64).map(|i| &qn - pow(q, i)).product(), "gl_order")
}

/// Orders of the general linear group and the form stabilizers.
pub fn group_order(kind: GroupKind, n: usize, q: u64) -> Result<BigUint> {
    let pp = PrimePower::from_q(q)?;
    if n == 0 {
        return Err(Error::InvalidParameter("group order needs n >= 1".into()));
    }
    if kind == GroupKind::Gl {
        return Ok(gl_order(n, q));
    }
    let m = (n / 2) as u64;
    let odd_q = pp.p != 2;
    let invalid = || {
        Err(Error::InvalidParameter(format!(
            "{kind} is not defined for n = {n}, q = {q}"
        )))
    };
    let v = match (odd_q, n.is_multiple_of(2), kind) {
        (true, true, GroupKind::OmegaPlus | GroupKind::OmegaMinus) => {
            let sign = if q % 4 == 1 || m.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            let mid = if kind == GroupKind::OmegaPlus { pow(q, m) - sign } else { pow(q, m) + sign };
            2 * pow(q, m * (m - 1)) * mid * even_product(q, m - 1)
        }
        (true, false, GroupKind::OmegaPlus | GroupKind::OmegaMinus) => 2 * pow(q, m * m) * even_product(q, m),
        (false, false, GroupKind::OmegaPlain) => pow(q, m * m) * even_product(q, m),
        (false, true, GroupKind::OmegaPlus) => pow(q, m * m) * even_product(q, m - 1),
        (false, true, GroupKind::OmegaMinus) => pow(q, m * m) * even_product(q, m),
        _ => return invalid(),
    };
    Ok(to_nat(v, "group_order"))
}

/// `#Sym(n, q)` from the group orders: `#GL / #Omega+ + #GL / #Omega-`,
/// or `#GL / #Omega` for even `q` and odd `n`.
pub fn sym_count_via_groups(n: usize, q: u64) -> Result<BigUint> {
    let gl = gl_order(n, q);
    let exact = |d: BigUint| {
        let (quot, rem) = gl.div_rem(&d);
        assert!(rem.is_zero(), "group order does not divide #GL");
        quot
    };
    if q.is_multiple_of(2) && n % 2 == 1 {
        PrimePower::from_q(q)?;
        return Ok(exact(group_order(GroupKind::OmegaPlain, n, q)?));
    }
    Ok(exact(group_order(GroupKind::OmegaPlus, n, q)?) + exact(group_order(GroupKind::OmegaMinus, n, q)?))
}

/// Rows of the isotropic-vector table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropicRow {
    /// `q` odd, `n` odd, either form: `q^{n-1}`.
    OddQOddN,
    /// `N_+ = q^{n-1} + q^{n/2} - q^{n/2-1}`.
    PlusHigh,
    /// `N_+ = q^{n-1} - q^{n/2} + q^{n/2-1}`.
    PlusLow,
    /// `N_- = q^{n-1} - q^{n/2} + q^{n/2-1}`.
    MinusLow,
    /// `N_- = q^{n-1} + q^{n/2} - q^{n/2-1}`.
    MinusHigh,
    /// `q` even, `n` odd: `q^{n-1}`.
    EvenQOddN,
    /// `q` even, `n` even, `+` form: `q^{n-1}`.
    EvenQEvenNPlus,
    /// `q` even, `n` even, `-` form: `q^n`.
    EvenQEvenNMinus,
}

impl IsotropicRow {
    pub const ALL: [IsotropicRow; 8] = [
        IsotropicRow::OddQOddN,
        IsotropicRow::PlusHigh,
        IsotropicRow::PlusLow,
        IsotropicRow::MinusLow,
        IsotropicRow::MinusHigh,
        IsotropicRow::EvenQOddN,
        IsotropicRow::EvenQEvenNPlus,
        IsotropicRow::EvenQEvenNMinus,
    ];
}

/// Selects the applicable row. For odd `q` and even `n` the sign of the
/// `q^{n/2}` term flips exactly when `q = 3 (mod 4)` and `n = 2 (mod 4)`,
/// i.e. when `-1` is a nonsquare and `n/2` is odd.
pub fn isotropic_row(n: usize, q: u64, form: FormKind) -> Result<IsotropicRow> {
    let pp = PrimePower::from_q(q)?;
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let row = if pp.p != 2 {
        if n % 2 == 1 {
            IsotropicRow::OddQOddN
        } else {
            let flipped = q % 4 == 3 && n % 4 == 2;
            match (form, flipped) {
                (FormKind::Plus, false) => IsotropicRow::PlusHigh,
                (FormKind::Plus, true) => IsotropicRow::PlusLow,
                (FormKind::Minus, false) => IsotropicRow::MinusLow,
                (FormKind::Minus, true) => IsotropicRow::MinusHigh,
            }
        }
    } else if n % 2 == 1 {
        if form == FormKind::Minus {
            return Err(Error::InvalidParameter(format!(
                "no second scalar product for even q = {q} and odd n = {n}"
            )));
        }
        IsotropicRow::EvenQOddN
    } else if form == FormKind::Plus {
        IsotropicRow::EvenQEvenNPlus
    } else {
        IsotropicRow::EvenQEvenNMinus
    };
    Ok(row)
}

/// `N_{+/-}(n)` from the table, with the row used.
pub fn isotropic_formula(n: usize, q: u64, form: FormKind) -> Result<(IsotropicRow, BigUint)> {
    let row = isotropic_row(n, q, form)?;
    let n64 = n as u64;
    let base = pow(q, n64 - 1);
    let swing = || pow(q, n64 / 2) - pow(q, n64 / 2 - 1);
    let v = match row {
        IsotropicRow::OddQOddN | IsotropicRow::EvenQOddN | IsotropicRow::EvenQEvenNPlus => base,
        IsotropicRow::PlusHigh | IsotropicRow::MinusHigh => base + swing(),
        IsotropicRow::PlusLow | IsotropicRow::MinusLow => base - swing(),
        IsotropicRow::EvenQEvenNMinus => pow(q, n64),
    };
    Ok((row, to_nat(v, "isotropic_formula")))
}

/// Right side of the two-edge-cut reduction:
/// `q g_1 g_2 + (q - 2) g' + (q - 1) g''`.
pub fn two_cut_rhs(g1: &BigUint, g2: &BigUint, g_contract1: &BigUint, g_contract2: &BigUint, q: u64) -> BigInt {
    qi(q) * BigInt::from(g1.clone()) * BigInt::from(g2.clone())
        + (qi(q) - 2) * BigInt::from(g_contract1.clone())
        + (qi(q) - 1) * BigInt::from(g_contract2.clone())
}

/// `(exponent, coefficient)` terms of the invertible-matrix count on the
/// Fano incidence pattern for odd `q`.
pub const FANO_ODD_TERMS: [(u32, i64); 19] = [
    (21, 1),
    (20, -1),
    (19, -1),
    (18, -14),
    (17, -7),
    (16, 176),
    (15, 8),
    (14, -1860),
    (13, 5603),
    (12, -8880),
    (11, 9010),
    (10, -6110),
    (9, 2603),
    (8, -428),
    (7, -248),
    (6, 208),
    (5, -72),
    (4, 13),
    (3, -1),
];

/// Same for even `q`.
pub const FANO_EVEN_TERMS: [(u32, i64); 17] = [
    (21, 1),
    (20, -1),
    (19, -1),
    (18, -14),
    (17, -7),
    (16, 175),
    (15, 21),
    (14, -1938),
    (13, 5889),
    (12, -9595),
    (11, 10297),
    (10, -7826),
    (9, 4319),
    (8, -1715),
    (7, 467),
    (6, -78),
    (5, 6),
];

/// Ascending coefficients of the Fano branch polynomial for the parity of `q`.
pub fn fano_branch(odd: bool) -> Vec<BigInt> {
    let terms: &[(u32, i64)] = if odd { &FANO_ODD_TERMS } else { &FANO_EVEN_TERMS };
    let mut c = vec![BigInt::zero(); 22];
    for &(e, v) in terms {
        c[e as usize] = BigInt::from(v);
    }
    c
}

/// Fano pattern count at `q` from the branch matching its parity.
pub fn fano_formula(q: u64) -> BigUint {
    to_nat(eval_int_poly(&fano_branch(q % 2 == 1), q), "fano_formula")
}

/// `g_M(q)` for the four-point line, by the residue of `q` mod 3.
pub fn fourpoint_formula(q: u64) -> BigUint {
    let q1: BigInt = qi(q) - 1;
    let v = match q % 3 {
        1 => qi(q) * &q1 * (pow(q, 2) - 1),
        2 => qi(q) * &q1 * (pow(q, 2) + 1),
        _ => pow(q, 3) * &q1,
    };
    to_nat(v, "fourpoint_formula")
}

/// Parameters accepted by [`evaluate`]; each formula reads what it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaParams {
    pub q: u64,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub r: Option<usize>,
}

/// A formula value with its identifying name and inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub name: String,
    pub params: Vec<(String, u64)>,
    pub value: BigUint,
}

/// Names understood by [`evaluate`] with their required parameters.
pub const FORMULA_NAMES: [(&str, &str); 17] = [
    ("g-complete", "n q"),
    ("macwilliams-h", "n r q"),
    ("g-complete-minus-clique", "n k q"),
    ("conjecture-knk", "n k q"),
    ("g-minus-star", "n s q"),
    ("cycle-g", "n q"),
    ("cycle-f", "n q"),
    ("group-order-gl", "n q"),
    ("group-order-omega-plus", "n q"),
    ("group-order-omega-minus", "n q"),
    ("group-order-omega-plain", "n q"),
    ("sym-via-groups", "n q"),
    ("isotropic-plus", "n q"),
    ("isotropic-minus", "n q"),
    ("fourpoint", "q"),
    ("fano-odd", "q"),
    ("fano-even", "q"),
];

/// Evaluates a formula by name.
pub fn evaluate(name: &str, p: &FormulaParams) -> Result<FormulaResult> {
    let need = |v: Option<usize>, what: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("formula {name} needs parameter {what}")))
    };
    let mut params: Vec<(String, u64)> = Vec::new();
    let mut take = |v: Option<usize>, what: &str| -> Result<usize> {
        let x = need(v, what)?;
        params.push((what.to_string(), x as u64));
        Ok(x)
    };
    let q = p.q;
    let value = match name {
        "g-complete" => g_complete(take(p.n, "n")?, q),
        "macwilliams-h" => {
            let n = take(p.n, "n")?;
            macwilliams_h(n, take(p.r, "r")?, q)
        }
        "g-complete-minus-clique" => {
            let n = take(p.n, "n")?;
            g_complete_minus_clique(n, take(p.k, "k")?, q)?
        }
        "conjecture-knk" => {
            let n = take(p.n, "n")?;
            conjecture_knk(n, take(p.k, "k")?, q)?
        }
        "g-minus-star" => {
            let n = take(p.n, "n")?;
            g_minus_star(n, take(p.s, "s")?, q)?
        }
        "cycle-g" => cycle_counts(take(p.n, "n")?, q, TreePoly::Q)?,
        "cycle-f" => cycle_counts(take(p.n, "n")?, q, TreePoly::P)?,
        "group-order-gl" => group_order(GroupKind::Gl, take(p.n, "n")?, q)?,
        "group-order-omega-plus" => group_order(GroupKind::OmegaPlus, take(p.n, "n")?, q)?,
        "group-order-omega-minus" => group_order(GroupKind::OmegaMinus, take(p.n, "n")?, q)?,
        "group-order-omega-plain" => group_order(GroupKind::OmegaPlain, take(p.n, "n")?, q)?,
        "sym-via-groups" => sym_count_via_groups(take(p.n, "n")?, q)?,
        "isotropic-plus" => isotropic_formula(take(p.n, "n")?, q, FormKind::Plus)?.1,
        "isotropic-minus" => isotropic_formula(take(p.n, "n")?, q, FormKind::Minus)?.1,
        "fourpoint" => fourpoint_formula(q),
        "fano-odd" => to_nat(eval_int_poly(&fano_branch(true), q), "fano-odd"),
        "fano-even" => to_nat(eval_int_poly(&fano_branch(false), q), "fano-even"),
        other => return Err(Error::InvalidParameter(format!("unknown formula {other:?}"))),
    };
    params.push(("q".to_string(), q));
    Ok(FormulaResult {
        name: name.to_string(),
        params,
        value,
    })
}

/// Exact `u64` view of a small formula value, for tests and reports.
pub fn as_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

/// True if the two coefficient lists describe different polynomials.
pub fn polys_differ(a: &[BigInt], b: &[BigInt]) -> bool {
    let len = a.len().max(b.len());
    (0..len).any(|i| {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        (x - y).abs() > BigInt::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn u(v: BigUint) -> u64 {
        v.to_u64().unwrap()
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(u(g_complete(1, 7)), 1);
        assert_eq!(u(g_complete(2, 5)), 4);
        assert_eq!(u(g_complete(3, 2)), 4);
        assert_eq!(u(g_complete(4, 2)), 28);
        assert_eq!(u(g_complete(5, 2)), 448);
    }

    #[test]
    fn rank_census() {
        assert_eq!(u(macwilliams_h(2, 2, 2)), 4);
        assert_eq!(u(macwilliams_h(2, 1, 2)), 3);
        assert_eq!(u(macwilliams_h(5, 0, 3)), 1);
        assert_eq!(u(macwilliams_h(2, 3, 3)), 0);
        for q in [2, 3, 4, 5, 7] {
            let mut h = macwilliams_profile(1, q);
            for n in 1..6 {
                h = macwilliams_step(&h, n, q);
                assert_eq!(h, macwilliams_profile(n + 1, q), "n={} q={q}", n + 1);
                assert_eq!(h[n + 1], g_complete(n + 2, q));
            }
        }
    }

    #[test]
    fn apex_pipeline() {
        let q = 2;
        let base = vec![BigUint::from(1u32), BigUint::from(2u32), BigUint::from(1u32)];
        let next = apex_step(&base, 3, q);
        assert_eq!(u(next[3].clone()), 12);
        let total: BigUint = next.iter().sum();
        assert_eq!(total, BigUint::from(2u32).pow(5));
        assert_eq!(u(g_complete_minus_clique(4, 2, 2).unwrap()), 12);
        for q in 2..=4 {
            assert_eq!(u(g_complete_minus_clique(4, 3, q).unwrap()), (q - 1).pow(3));
            for n in 2..=6 {
                assert_eq!(g_complete_minus_clique(n, 1, q).unwrap(), g_complete(n, q));
                if n >= 3 {
                    assert_eq!(g_complete_minus_clique(n, 2, q).unwrap(), g_minus_star(n, 1, q).unwrap());
                }
            }
        }
        assert!(g_complete_minus_clique(3, 3, 2).is_err());
    }

    #[test]
    fn conjecture_lines_match_pipeline() {
        for k in 3..=5 {
            for n in k + 1..=11 {
                match conjecture_knk_poly(n, k) {
                    Ok(_) => {
                        for q in [2, 3, 4, 5] {
                            assert_eq!(
                                conjecture_knk(n, k, q).unwrap(),
                                g_complete_minus_clique(n, k, q).unwrap(),
                                "K_{n} - K_{k} q={q}"
                            );
                        }
                    }
                    Err(Error::BoundaryAmbiguous(_)) => assert!(n <= 6, "K_{n} - K_{k} rejected"),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert_eq!(u(conjecture_knk(6, 3, 2).unwrap()), 1408);
        assert_eq!(u(conjecture_knk(5, 3, 2).unwrap()), 32);
        assert!(matches!(conjecture_knk(5, 5, 2), Err(Error::BoundaryAmbiguous(_))));
        assert!(matches!(conjecture_knk(4, 4, 2), Err(Error::BoundaryAmbiguous(_))));
        assert!(matches!(conjecture_knk(4, 5, 2), Err(Error::BoundaryAmbiguous(_))));
        assert!(matches!(conjecture_knk(5, 6, 2), Err(Error::InvalidParameter(_))));
        assert!(conjecture_knk(5, 4, 2).is_ok());
        assert!(matches!(conjecture_knk(5, 2, 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn star_removal() {
        assert_eq!(u(g_minus_star(4, 1, 2).unwrap()), 12);
        assert_eq!(u(g_minus_star(5, 2, 2).unwrap()), 88);
        assert_eq!(u(g_minus_star(3, 1, 5).unwrap()), 16);
        for n in 2..=7 {
            for q in 2..=5 {
                assert_eq!(g_minus_star(n, 0, q).unwrap(), g_complete(n, q));
            }
        }
        assert!(g_minus_star(5, 4, 2).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(u(cycle_counts(4, 2, TreePoly::Q).unwrap()), 4);
        assert_eq!(u(cycle_counts(4, 3, TreePoly::Q).unwrap()), 42);
        assert_eq!(u(cycle_counts(4, 2, TreePoly::P).unwrap()), 8);
        for q in 2..=9u64 {
            assert_eq!(u(cycle_counts(4, q, TreePoly::Q).unwrap()), q * (q - 1) * (q * q - 2));
            assert_eq!(u(cycle_counts(2, q, TreePoly::Q).unwrap()), q * (q - 1));
        }
    }

    #[test]
    fn groups() {
        let o = |k, n, q| u(group_order(k, n, q).unwrap());
        assert_eq!(o(GroupKind::Gl, 2, 2), 6);
        assert_eq!(o(GroupKind::OmegaPlus, 2, 2), 2);
        assert_eq!(o(GroupKind::OmegaMinus, 2, 2), 6);
        assert_eq!(o(GroupKind::OmegaPlus, 2, 3), 8);
        assert_eq!(o(GroupKind::OmegaMinus, 2, 3), 4);
        assert_eq!(o(GroupKind::OmegaPlain, 3, 2), 6);
        assert!(group_order(GroupKind::OmegaPlain, 3, 3).is_err());
        assert!(group_order(GroupKind::OmegaMinus, 3, 4).is_err());
        assert!(group_order(GroupKind::Gl, 2, 6).is_err());
        for n in 1..=5 {
            for q in [2, 3, 4, 5, 7, 8, 9] {
                assert_eq!(sym_count_via_groups(n, q).unwrap(), g_complete(n + 1, q), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn two_branch_identity() {
        for m in 1..=4u32 {
            for q in 2..=5i64 {
                let qm = BigRational::from_integer(BigInt::from(q).pow(m));
                let one = BigRational::one();
                let lhs = (one.clone() / (&qm - &one) + one.clone() / (&qm + &one)) / BigRational::from_integer(2.into());
                let rhs = one.clone() / &qm + one.clone() / (&qm * (&qm * &qm - &one));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn isotropic_table() {
        let n = |n, q, f| u(isotropic_formula(n, q, f).unwrap().1);
        assert_eq!(n(2, 2, FormKind::Plus), 2);
        assert_eq!(n(2, 2, FormKind::Minus), 4);
        assert_eq!(n(3, 3, FormKind::Plus), 9);
        assert_eq!(n(2, 3, FormKind::Plus), 1);
        assert_eq!(n(2, 3, FormKind::Minus), 5);
        assert_eq!(n(2, 5, FormKind::Plus), 9);
        assert!(isotropic_formula(3, 2, FormKind::Minus).is_err());
    }

    #[test]
    fn two_cut_on_c4() {
        let b = |x: u32| BigUint::from(x);
        assert_eq!(two_cut_rhs(&b(1), &b(1), &b(4), &b(2), 2), BigInt::from(4));
        assert_eq!(two_cut_rhs(&b(2), &b(2), &b(18), &b(6), 3), BigInt::from(42));
    }

    #[test]
    fn fano_and_fourpoint() {
        assert_eq!(u(fano_formula(2)), 184_768);
        assert_eq!(u(fano_formula(3)), 3_775_251_456);
        assert!(polys_differ(&fano_branch(true), &fano_branch(false)));
        assert_eq!(u(fourpoint_formula(2)), 10);
        assert_eq!(u(fourpoint_formula(3)), 54);
        assert_eq!(u(fourpoint_formula(4)), 180);
    }

    #[test]
    fn dispatcher() {
        let p = FormulaParams { q: 2, n: Some(4), ..Default::default() };
        let r = evaluate("g-complete", &p).unwrap();
        assert_eq!(u(r.value), 28);
        assert_eq!(r.params, vec![("n".into(), 4), ("q".into(), 2)]);
        assert!(evaluate("g-minus-star", &p).is_err());
        assert!(evaluate("nope", &p).is_err());
        let p = FormulaParams { q: 2, n: Some(5), k: Some(5), ..Default::default() };
        assert!(evaluate("conjecture-knk", &p).is_err());
        for (name, _) in FORMULA_NAMES {
            let p = FormulaParams { q: 3, n: Some(4), k: Some(3), s: Some(1), r: Some(2) };
            let _ = evaluate(name, &p);
        }
    }
}
