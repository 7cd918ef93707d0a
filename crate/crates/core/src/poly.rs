//! Integer polynomials in one variable `t`.

use std::fmt;

/// Coefficient list, lowest degree first; trailing coefficient nonzero
/// unless the polynomial is zero (empty list).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// `1 + b t`.
    pub fn one_plus(b: i64) -> Self {
        if b == 0 {
            Polynomial::one()
        } else {
            Polynomial { coeffs: vec![1, b] }
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self
                .coeff(i)
                .checked_add(other.coeff(i))
                .expect("polynomial coefficient overflow");
        }
        Polynomial::from_coeffs(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).expect("polynomial coefficient overflow");
                out[i + j] = out[i + j]
                    .checked_add(t)
                    .expect("polynomial coefficient overflow");
            }
        }
        Polynomial::from_coeffs(out)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0i64; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Writes the polynomial as `prod (1 + b_i t)` with positive integers
    /// `b_i`, if possible. Returns the multiset of the `b_i`, ascending.
    ///
    /// Requires constant term 1; linear factors are unique over Q, so a
    /// failure means no such factorization exists.
    pub fn split_into_linear_factors(&self) -> Option<Vec<usize>> {
        if self.coeff(0) != 1 {
            return None;
        }
        let mut roots = Vec::new();
        let mut cur = self.coeffs.clone();
        while cur.len() > 1 {
            let lead = *cur.last().unwrap();
            let b = positive_divisors(lead.unsigned_abs())
                .into_iter()
                .find(|&b| try_divide_one_plus(&cur, b as i64).is_some())?;
            cur = try_divide_one_plus(&cur, b as i64).unwrap();
            roots.push(b as usize);
        }
        if cur != vec![1] {
            return None;
        }
        roots.sort_unstable();
        Some(roots)
    }
}

/// Divides by `1 + b t` if it divides exactly.
fn try_divide_one_plus(p: &[i64], b: i64) -> Option<Vec<i64>> {
    let d = p.len() - 1;
    let mut q = vec![0i64; d];
    let mut prev = 0i64;
    for i in 0..d {
        let qi = p[i].checked_sub(b.checked_mul(prev)?)?;
        q[i] = qi;
        prev = qi;
    }
    if p[d] == b.checked_mul(prev)? {
        Some(q)
    } else {
        None
    }
}

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if mag == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{mag}t")?;
                    }
                }
                _ => {
                    if mag == 1 {
                        write!(f, "t^{i}")?;
                    } else {
                        write!(f, "{mag}t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting() {
        // (1+t)(1+3t)(1+4t)(1+5t)
        let p = Polynomial::one_plus(1)
            .mul(&Polynomial::one_plus(3))
            .mul(&Polynomial::one_plus(4))
            .mul(&Polynomial::one_plus(5));
        assert_eq!(p.split_into_linear_factors(), Some(vec![1, 3, 4, 5]));

        // 1 + 4t + 6t^2 + 3t^3 = (1+t)(1+3t+3t^2): the quadratic has
        // discriminant 9 - 12 < 0, so no splitting exists.
        let p = Polynomial::from_coeffs(vec![1, 4, 6, 3]);
        assert_eq!(p.split_into_linear_factors(), None);

        assert_eq!(Polynomial::one().split_into_linear_factors(), Some(vec![]));
    }

    #[test]
    fn display() {
        let p = Polynomial::from_coeffs(vec![1, 4, 6, 3]);
        assert_eq!(p.to_string(), "1 + 4t + 6t^2 + 3t^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_coeffs(vec![0, -1]).to_string(), "-t");
    }
}
