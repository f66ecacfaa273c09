//! Rational functions in `x, y` whose denominators are products of the
//! boundary factors `x, x-1, y, y-1, xy-1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeff::{int, Rational};

/// A polynomial in `x, y`: exponent pair `(i, j)` of `x^i y^j` to coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2(BTreeMap<(u32, u32), Rational>);

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((i, j), c);
        }
        Poly2(m)
    }

    pub fn x() -> Self {
        Self::term(int(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(int(1), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.0.clone();
        for (k, c) in &other.0 {
            let e = out.entry(*k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(k);
            }
        }
        Poly2(out)
    }

    pub fn neg(&self) -> Poly2 {
        Poly2(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), a) in &self.0 {
            for ((k, l), b) in &other.0 {
                out = out.add(&Poly2::term(a * b, i + k, j + l));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        (0..n).fold(Poly2::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Leading term in lexicographic order (`x` before `y`).
    fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.0.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let ((di, dj), dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Poly2::zero();
        while let Some(((ri, rj), rc)) = rem.leading() {
            if ri < di || rj < dj {
                return None;
            }
            let t = Poly2::term(rc / dc, ri - di, rj - dj);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || (*i == 0 && *j == 0) {
                parts.push(alloc::format!("{a}"));
            }
            for (v, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => parts.push(String::from(v)),
                    _ => parts.push(alloc::format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// The denominator factors, in order.
pub const FACTOR_NAMES: [&str; 5] = ["x", "(x-1)", "y", "(y-1)", "(x*y-1)"];

fn factor(i: usize) -> Poly2 {
    let one = Poly2::constant(int(1));
    match i {
        0 => Poly2::x(),
        1 => Poly2::x().sub(&one),
        2 => Poly2::y(),
        3 => Poly2::y().sub(&one),
        _ => Poly2::x().mul(&Poly2::y()).sub(&one),
    }
}

/// `num / Π factor_i^den_i`, kept with no factor dividing the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatFn {
    num: Poly2,
    den: [u32; 5],
}

impl RatFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(num: Poly2, den: [u32; 5]) -> Self {
        RatFn { num, den }.reduced()
    }

    /// `c / factor_i`.
    pub fn simple(c: Rational, i: usize) -> Self {
        let mut den = [0; 5];
        den[i] = 1;
        RatFn::new(Poly2::constant(c), den)
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> [u32; 5] {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            return RatFn::zero();
        }
        for i in 0..5 {
            while self.den[i] > 0 {
                match self.num.div_exact(&factor(i)) {
                    Some(q) => {
                        self.num = q;
                        self.den[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = [0; 5];
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        for i in 0..5 {
            den[i] = self.den[i].max(other.den[i]);
            a = a.mul(&factor(i).pow(den[i] - self.den[i]));
            b = b.mul(&factor(i).pow(den[i] - other.den[i]));
        }
        RatFn::new(a.add(&b), den)
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        let mut den = [0; 5];
        for (i, d) in den.iter_mut().enumerate() {
            *d = self.den[i] + other.den[i];
        }
        RatFn::new(self.num.mul(&other.num), den)
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        RatFn::new(self.num.mul(&Poly2::constant(c.clone())), self.den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        let den: Vec<String> = (0..5)
            .filter(|&i| self.den[i] > 0)
            .map(|i| match self.den[i] {
                1 => String::from(FACTOR_NAMES[i]),
                e => alloc::format!("{}^{e}", FACTOR_NAMES[i]),
            })
            .collect();
        if !den.is_empty() {
            write!(f, "/({})", den.join("*"))?;
        }
        Ok(())
    }
}
