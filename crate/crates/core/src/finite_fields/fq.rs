//! `F_{p^n}` with elements encoded as integers `sum c_i p^i`.

use crate::error::{GaloisError, Result};

pub const DEFAULT_FIELD_SIZE_CAP: usize = 4096;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(p, n)` with `p^n <= max`, ordered by `p^n`.
pub fn prime_powers_up_to(max: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for q in 2..=max {
        let Some(p) = (2..=q).find(|&d| q % d == 0) else {
            continue;
        };
        let mut rest = q;
        let mut n = 0;
        while rest % p == 0 {
            rest /= p;
            n += 1;
        }
        if rest == 1 {
            out.push((p as u32, n));
        }
    }
    out
}

/// The finite field of order `p^n`.
#[derive(Debug, Clone)]
pub struct Fq {
    p: u32,
    n: u32,
    size: usize,
    /// Monic modulus, lowest coefficient first (length `n + 1`).
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Fq {
    /// Builds the field with the first irreducible modulus (coefficient
    /// vectors ordered by their integer encoding) and a certified
    /// multiplicative generator.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        Self::with_cap(p, n, DEFAULT_FIELD_SIZE_CAP)
    }

    pub fn with_cap(p: u32, n: u32, cap: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(GaloisError::InvalidInput(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(GaloisError::InvalidInput("extension degree must be positive".into()));
        }
        let size = (p as usize)
            .checked_pow(n)
            .filter(|&s| s <= cap)
            .ok_or(GaloisError::Capacity {
                what: "finite field size",
                actual: (p as usize).saturating_pow(n),
                cap,
            })?;
        let modulus = first_irreducible(p, n);
        let mut f = Self {
            p,
            n,
            size,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        f.generator = (1..size as u32)
            .find(|&g| f.order_slow(g) == size - 1)
            .ok_or_else(|| GaloisError::InvariantViolation("multiplicative group is not cyclic".into()))?;
        let mut exp = Vec::with_capacity(size - 1);
        let mut log = vec![0; size];
        let mut x = 1;
        for i in 0..size - 1 {
            exp.push(x);
            log[x as usize] = i as u32;
            x = f.mul_slow(x, f.generator);
        }
        f.exp = exp;
        f.log = log;
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as usize + self.log[b as usize] as usize) % (self.size - 1);
        self.exp[k]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let k = (self.log[a as usize] as u64 * (e % (self.size as u64 - 1))) % (self.size as u64 - 1);
        self.exp[k as usize]
    }

    /// Schoolbook product reduced by the modulus; used to build the tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let n = self.n as usize;
        let p = self.p;
        let mut prod = vec![0u32; 2 * n];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..=n {
                let t = k - n + i;
                prod[t] = (prod[t] + (p - c) * self.modulus[i]) % p;
            }
        }
        self.encode(&prod[..n])
    }

    fn order_slow(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul_slow(x, g);
            k += 1;
            if k > self.size {
                return 0;
            }
        }
        k
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> usize {
        let l = self.log[a as usize] as usize;
        (self.size - 1) / gcd(l, self.size - 1)
    }

    /// The Frobenius power `x -> x^(p^k)` as a table.
    pub fn frobenius(&self, k: u32) -> Vec<u32> {
        let e = (self.p as u64).pow(k);
        self.elements().map(|x| self.pow(x, e)).collect()
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Polynomial remainder over `F_p`, both arguments lowest coefficient first,
/// `m` monic.
fn rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * mi) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `d` over `F_p`, ordered by the integer
/// encoding of their lower coefficients.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(d);
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            c.push((k % p as usize) as u32);
            k /= p as usize;
        }
        c.push(1);
        c
    })
}

/// Irreducible iff no monic polynomial of degree `1..=n/2` divides it.
pub fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let n = f.len() as u32 - 1;
    (1..=n / 2).all(|d| monic_polys(p, d).all(|g| rem_mod_p(f, &g, p).iter().any(|&c| c != 0)))
}

fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    monic_polys(p, n)
        .find(|f| is_irreducible_mod_p(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(f2.size(), 2);
        let f16 = Fq::new(2, 4).unwrap();
        assert_eq!(f16.elements().count(), 16);
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.order(f9.generator()), 8);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustively() {
        for (p, n) in [(2, 3), (3, 2), (5, 1), (2, 4)] {
            let f = Fq::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(Fq::new(4, 1).is_err());
        assert!(matches!(Fq::new(2, 13), Err(GaloisError::Capacity { .. })));
    }

    #[test]
    fn prime_power_list() {
        let q: Vec<usize> = prime_powers_up_to(16).iter().map(|&(p, n)| (p as usize).pow(n)).collect();
        assert_eq!(q, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
        assert!(prime_powers_up_to(1).is_empty());
    }
}
