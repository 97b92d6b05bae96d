//! Exact interpolation of counting sequences in `q` and probes for
//! polynomial or quasipolynomial behaviour. All arithmetic is rational.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A sample `(q, count)`.
pub type Point = (u64, BigInt);

/// Polynomial in `q` with rational coefficients, ascending degree, no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        RationalPoly::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        RationalPoly::default()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(q));
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients if every coefficient is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    fn add_scaled(&mut self, other: &RationalPoly, scale: &BigRational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * scale;
        }
        *self = RationalPoly::new(core::mem::take(&mut self.coeffs));
    }

    /// Multiplies by `(q - root)`.
    fn mul_linear(&self, root: &BigRational) -> RationalPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        RationalPoly::new(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || e == 0 {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match e {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

fn check_distinct(points: &[Point]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for (q, _) in points {
        if seen.insert(*q, ()).is_some() {
            return Err(Error::DuplicateAbscissa(*q));
        }
    }
    Ok(())
}

/// The unique polynomial of degree below `points.len()` through all
/// points, by Newton divided differences.
pub fn interpolate(points: &[Point]) -> Result<RationalPoly> {
    if points.is_empty() {
        return Err(Error::InsufficientPoints("interpolation needs at least one point".into()));
    }
    check_distinct(points)?;
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(q, _)| BigRational::from_integer(BigInt::from(*q)))
        .collect();
    let mut table: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let n = points.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut result = RationalPoly::zero();
    let mut basis = RationalPoly::new(vec![BigRational::one()]);
    for i in 0..n {
        result.add_scaled(&basis, &table[i]);
        basis = basis.mul_linear(&xs[i]);
    }
    Ok(result)
}

fn sorted(points: &[Point]) -> Vec<Point> {
    let mut v = points.to_vec();
    v.sort_by_key(|(q, _)| *q);
    v
}

/// Outcome of [`polynomiality_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyVerdict {
    /// Every held-out point lies on the fitted polynomial.
    Polynomial(RationalPoly),
    /// The first held-out point (in ascending `q`) off the fit.
    NotPolynomial { witness: Point, fitted: RationalPoly },
}

/// Fits the `degree_bound + 1` lowest-`q` points and validates the rest.
pub fn polynomiality_probe(points: &[Point], degree_bound: usize) -> Result<PolyVerdict> {
    check_distinct(points)?;
    if points.len() < degree_bound + 2 {
        return Err(Error::InsufficientPoints(format!(
            "degree bound {degree_bound} needs {} points, got {}",
            degree_bound + 2,
            points.len()
        )));
    }
    let pts = sorted(points);
    let fitted = interpolate(&pts[..degree_bound + 1])?;
    for p in &pts[degree_bound + 1..] {
        if fitted.eval(p.0) != BigRational::from_integer(p.1.clone()) {
            return Ok(PolyVerdict::NotPolynomial { witness: p.clone(), fitted });
        }
    }
    Ok(PolyVerdict::Polynomial(fitted))
}

/// A function of `q` given by one polynomial per residue class mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub modulus: u64,
    /// Branch for each residue `0..modulus`; `None` where no sample fell.
    pub branches: Vec<Option<RationalPoly>>,
}

impl Quasipolynomial {
    pub fn branch(&self, q: u64) -> Option<&RationalPoly> {
        self.branches[(q % self.modulus) as usize].as_ref()
    }

    pub fn eval(&self, q: u64) -> Option<BigRational> {
        self.branch(q).map(|p| p.eval(q))
    }
}

/// Smallest modulus `N <= max_modulus` for which, in every residue class
/// that has samples, the lowest `degree_bound + 1` points determine a
/// polynomial that matches the remaining points of the class. `Ok(None)`
/// if every modulus is refuted. A modulus whose classes are too thin to
/// validate stops the search with an error naming the classes.
pub fn quasipoly_probe(points: &[Point], max_modulus: u64, degree_bound: usize) -> Result<Option<Quasipolynomial>> {
    check_distinct(points)?;
    if max_modulus == 0 {
        return Err(Error::InvalidParameter("max modulus must be at least 1".into()));
    }
    let pts = sorted(points);
    for modulus in 1..=max_modulus {
        let mut classes: Vec<Vec<Point>> = vec![Vec::new(); modulus as usize];
        for p in &pts {
            classes[(p.0 % modulus) as usize].push(p.clone());
        }
        let thin: Vec<String> = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty() && c.len() < degree_bound + 2)
            .map(|(r, c)| format!("q = {r} mod {modulus} has {} of {} points", c.len(), degree_bound + 2))
            .collect();
        if !thin.is_empty() {
            return Err(Error::InsufficientPoints(thin.join("; ")));
        }
        let mut branches = Vec::with_capacity(modulus as usize);
        let mut ok = true;
        for class in &classes {
            if class.is_empty() {
                branches.push(None);
                continue;
            }
            match polynomiality_probe(class, degree_bound)? {
                PolyVerdict::Polynomial(p) => branches.push(Some(p)),
                PolyVerdict::NotPolynomial { .. } => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(Some(Quasipolynomial { modulus, branches }));
        }
    }
    Ok(None)
}

/// True iff every coefficient is an integer.
pub fn integer_coeff_check(poly: &RationalPoly) -> bool {
    poly.is_integral()
}
