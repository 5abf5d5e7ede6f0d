//! Finite fields `F_{3^k}` for `k ≤ 4`, with full addition and multiplication tables.

use crate::{Error, Result};

pub type Elt = u8;

/// Coefficients `c_0..c_{k-1}` of the Conway polynomial `x^k + Σ c_i x^i` over `F_3`.
fn conway(k: u32) -> &'static [u8] {
    match k {
        1 => &[1],
        2 => &[2, 2],
        3 => &[1, 2, 0],
        4 => &[2, 0, 0, 2],
        _ => unreachable!(),
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    pub k: u32,
    pub q: usize,
    add: Vec<Elt>,
    mul: Vec<Elt>,
    neg: Vec<Elt>,
    inv: Vec<Elt>,
    /// A generator of the multiplicative group.
    pub primitive: Elt,
}

fn digits(mut a: usize, k: u32) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let d = (a % 3) as u8;
            a /= 3;
            d
        })
        .collect()
}

fn from_digits(d: &[u8]) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * 3 + x as usize)
}

impl Field {
    pub fn of_degree(k: u32) -> Result<Field> {
        if !(1..=4).contains(&k) {
            return Err(Error::UnsupportedField(format!("F_3^{k}: extension degree must be 1..=4")));
        }
        let q = 3usize.pow(k);
        let c = conway(k);
        let polymul = |a: usize, b: usize| -> usize {
            let (da, db) = (digits(a, k), digits(b, k));
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] += u32::from(*x) * u32::from(*y);
                }
            }
            for d in (k as usize..2 * k as usize).rev() {
                let lead = prod[d] % 3;
                prod[d] = 0;
                if lead != 0 {
                    for (i, ci) in c.iter().enumerate() {
                        prod[d - k as usize + i] += (3 - lead * u32::from(*ci) % 3) % 3;
                    }
                }
            }
            from_digits(&prod[..k as usize].iter().map(|x| (x % 3) as u8).collect::<Vec<_>>())
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u8> = digits(a, k).iter().zip(digits(b, k)).map(|(x, y)| (x + y) % 3).collect();
                add[a * q + b] = from_digits(&s) as Elt;
                mul[a * q + b] = polymul(a, b) as Elt;
            }
        }
        let neg = (0..q).map(|a| digits(a, k).iter().map(|x| (3 - x) % 3).collect::<Vec<_>>()).map(|d| from_digits(&d) as Elt).collect();
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elt;
        }
        let mut f = Field { k, q, add, mul, neg, inv, primitive: 0 };
        f.primitive = (2..q as Elt).find(|&g| f.order(g) == q - 1).unwrap_or(2);
        Ok(f)
    }

    /// The field with `q` elements.
    pub fn new(q: usize) -> Result<Field> {
        match q {
            3 => Field::of_degree(1),
            9 => Field::of_degree(2),
            27 => Field::of_degree(3),
            81 => Field::of_degree(4),
            _ => Err(Error::UnsupportedField(format!("F_{q}: only 3, 9, 27, 81 are supported"))),
        }
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }

    /// Panics on zero.
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elt, n: i64) -> Elt {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut r = 1;
        for _ in 0..n.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> Elt {
        n.rem_euclid(3) as Elt
    }

    pub fn order(&self, a: Elt) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.q as Elt
    }

    pub fn units(&self) -> impl Iterator<Item = Elt> {
        1..self.q as Elt
    }

    /// `1, z, .., z^{k-1}`, a basis over `F_3`.
    pub fn prime_basis(&self) -> Vec<Elt> {
        (0..self.k).map(|i| 3u32.pow(i) as Elt).collect()
    }

    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, 3)
    }

    /// Writes `a` as a polynomial in the generator `z` of the Conway presentation.
    pub fn format(&self, a: Elt) -> String {
        if self.k == 1 || a < 3 {
            return a.to_string();
        }
        let mut terms = Vec::new();
        for (i, d) in digits(a as usize, self.k).iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            terms.push(match (i, d) {
                (0, _) => d.to_string(),
                (_, 1) => var,
                _ => format!("{d}{var}"),
            });
        }
        terms.join("+")
    }

    pub fn parse(&self, s: &str) -> Result<Elt> {
        let s = s.trim();
        let mut digits = vec![0u8; self.k as usize];
        for term in s.split('+') {
            let term = term.trim();
            let (coef, power) = if let Some(pos) = term.find('z') {
                let c = &term[..pos];
                let p = term[pos + 1..].trim_start_matches('^');
                let p: usize = if p.is_empty() { 1 } else { p.parse().map_err(|_| Error::Parse(s.into()))? };
                (if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| Error::Parse(s.into()))? }, p)
            } else {
                (term.parse::<i64>().map_err(|_| Error::Parse(s.into()))?, 0)
            };
            if power >= self.k as usize {
                return Err(Error::Parse(format!("'{s}' is not reduced in F_{}", self.q)));
            }
            digits[power] = ((i64::from(digits[power]) + coef).rem_euclid(3)) as u8;
        }
        Ok(from_digits(&digits) as Elt)
    }

    /// Rank of a matrix over the field, by Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<Elt>]) -> usize {
        let mut m: Vec<Vec<Elt>> = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            let pivot: Vec<Elt> = m[r].iter().map(|&x| self.mul(x, inv)).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = self.sub(*x, self.mul(f, *y));
                    }
                }
            }
            m[r] = pivot;
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for k in 1..=4 {
            let f = Field::of_degree(k).unwrap();
            assert_eq!(f.order(f.primitive), f.q - 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements().step_by(5) {
                    for c in f.elements().step_by(7) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
                assert_eq!(f.parse(&f.format(a)).unwrap(), a);
            }
        }
        assert!(Field::new(5).is_err());
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field() {
        let f = Field::new(9).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
        assert_eq!((0..3).map(|a| f.frobenius(a)).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(f.elements().filter(|&a| f.frobenius(a) == a).count(), 3);
    }

    #[test]
    fn rank_over_field() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.rank(&[vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(f.rank(&[vec![1, 1], vec![1, 2]]), 2);
    }
}
