//! Exact ground-field arithmetic and a small dense linear solver.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldKind, FieldKind),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("matrix dimensions do not agree: {0}")]
    Dimension(String),
}

/// Which ground field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field usable as the ground field of every structure in the crate.
pub trait Field:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn kind() -> FieldKind;

    fn inv(&self) -> Result<Self, FieldError>;

    fn from_i64(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn to_scalar(&self) -> Scalar;

    /// Every element, for finite fields.
    fn elements() -> Option<Vec<Self>>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Result<Self, FieldError> {
        Self::from_bigint(num).div(&Self::from_bigint(den))
    }

    fn from_scalar(s: &Scalar) -> Result<Self, FieldError> {
        match (s, Self::kind()) {
            (Scalar::Rational(q), FieldKind::Rational) => Self::from_fraction(q.numer(), q.denom()),
            (Scalar::Prime { residue, modulus }, FieldKind::Prime(p)) if *modulus == p => {
                Ok(Self::from_bigint(&BigInt::from(*residue)))
            }
            (other, k) => Err(FieldError::FieldMismatch(other.kind(), k)),
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Field for BigRational {
    fn kind() -> FieldKind {
        FieldKind::Rational
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }
}

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo the prime `P`, always stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME: () = assert!(is_prime(P) && P < (1 << 32), "modulus must be a prime below 2^32");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::PRIME;
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn kind() -> FieldKind {
        FieldKind::Prime(P)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(Field::pow(self, (P - 2) as u32))
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp::new(r.to_i64().expect("reduced residue fits"))
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Prime { residue: self.0, modulus: P }
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(|r| Fp::new(r as i64)).collect())
    }
}

/// Field-tagged scalar used in reports and specs, where the field is only known at run time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Inv,
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime { modulus, .. } => FieldKind::Prime(*modulus),
        }
    }

    pub fn rational(n: i64, d: i64) -> Result<Scalar, FieldError> {
        if d == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(n.into(), d.into())))
    }

    pub fn residue(n: i64, p: u64) -> Scalar {
        Scalar::Prime { residue: n.rem_euclid(p as i64) as u64, modulus: p }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }
}

fn prime_pow(a: u64, mut e: u64, p: u64) -> u64 {
    let (mut base, mut acc) = (a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exact arithmetic on run-time tagged scalars. `b` is ignored for unary operations.
pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, FieldError> {
    let binary = |b: Option<&Scalar>| -> Result<Scalar, FieldError> {
        let b = b.ok_or_else(|| FieldError::Parse("missing second operand".into()))?;
        if a.kind() != b.kind() {
            return Err(FieldError::FieldMismatch(a.kind(), b.kind()));
        }
        Ok(b.clone())
    };
    match op {
        ScalarOp::Add | ScalarOp::Mul => {
            let b = binary(b)?;
            Ok(match (a, &b) {
                (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(if op == ScalarOp::Add { x + y } else { x * y }),
                (Scalar::Prime { residue: x, modulus: p }, Scalar::Prime { residue: y, .. }) => {
                    let (x, y, m) = (*x as u128, *y as u128, *p as u128);
                    let r = if op == ScalarOp::Add { (x + y) % m } else { x * y % m };
                    Scalar::Prime { residue: r as u64, modulus: *p }
                }
                _ => unreachable!("kinds checked above"),
            })
        }
        ScalarOp::Neg => Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Prime { residue, modulus } => Scalar::Prime { residue: (modulus - residue) % modulus, modulus: *modulus },
        }),
        ScalarOp::Inv => {
            if a.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            Ok(match a {
                Scalar::Rational(x) => Scalar::Rational(x.recip()),
                Scalar::Prime { residue, modulus } => {
                    Scalar::Prime { residue: prime_pow(*residue, modulus - 2, *modulus), modulus: *modulus }
                }
            })
        }
    }
}

impl Display for Scalar {
    /// `n/d` for rationals (denominator 1 omitted), `r mod p` for residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = FieldError;

    /// Accepts `n`, `n/d`, or `r mod p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let s = s.trim();
        if let Some((r, p)) = s.split_once(" mod ") {
            let r: i64 = r.trim().parse().map_err(|_| bad())?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            if !is_prime(p) {
                return Err(bad());
            }
            return Ok(Scalar::residue(r, p));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(n, d)))
    }
}

/// Dense row-major matrix over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Field> ScalarMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, entries: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Dimension("ragged rows".into()));
        }
        Ok(ScalarMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn column(v: Vec<S>) -> Self {
        ScalarMatrix { rows: v.len(), cols: 1, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution<S> {
    /// One solution (free variables set to zero), or `None` when inconsistent.
    pub solution: Option<ScalarMatrix<S>>,
    pub rank: usize,
}

/// Solves `m · x = rhs` exactly by Gauss-Jordan elimination.
pub fn solve_linear<S: Field>(m: &ScalarMatrix<S>, rhs: &ScalarMatrix<S>) -> Result<LinearSolution<S>, FieldError> {
    if m.rows != rhs.rows {
        return Err(FieldError::Dimension(format!("matrix has {} rows, right-hand side {}", m.rows, rhs.rows)));
    }
    let (n, k) = (m.cols, rhs.cols);
    let width = n + k;
    let mut a: Vec<Vec<S>> = (0..m.rows)
        .map(|i| {
            let mut row: Vec<S> = (0..n).map(|j| m.get(i, j).clone()).collect();
            row.extend((0..k).map(|j| rhs.get(i, j).clone()));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv()?;
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..width {
                    let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let rank = pivots.len();
    let consistent = a[rank..].iter().all(|row| row[n..].iter().all(Zero::is_zero));
    let solution = consistent.then(|| {
        let mut x = ScalarMatrix::zeros(n, k);
        for (row, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(c, j, a[row][n + j].clone());
            }
        }
        x
    });
    Ok(LinearSolution { solution, rank })
}

/// Renders a rational as a compact signed string; used by element printers.
pub(crate) fn is_negative<S: Field>(s: &S) -> bool {
    match s.to_scalar() {
        Scalar::Rational(q) => q.is_negative(),
        Scalar::Prime { .. } => false,
    }
}
