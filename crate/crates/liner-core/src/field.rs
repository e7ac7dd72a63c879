//! Finite-field arithmetic tables for the coordinate constructions.
//!
//! Orders up to 16 are supported through dense add/mul/neg/inv tables that are
//! exhaustively verified at construction time (field axioms plus the Frobenius
//! automorphism), so downstream geometry can trust the arithmetic blindly.
//! Elements of `F_{p^d}` are encoded as base-`p` digit strings of their
//! polynomial coefficients: the element `c₀ + c₁·x + … + c_{d−1}·x^{d−1}`
//! (mod the fixed irreducible) is the integer `Σ cᵢ·pⁱ`.

use crate::error::{LinerError, Result};

/// Field orders with precomputed tables.
pub const SUPPORTED_ORDERS: &[usize] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// One fixed irreducible polynomial per extension field, ascending
/// coefficients including the leading 1.
fn irreducible(p: usize, d: usize) -> Option<&'static [u8]> {
    match (p, d) {
        (2, 2) => Some(&[1, 1, 1]),       // x² + x + 1
        (2, 3) => Some(&[1, 1, 0, 1]),    // x³ + x + 1
        (2, 4) => Some(&[1, 1, 0, 0, 1]), // x⁴ + x + 1
        (3, 2) => Some(&[1, 0, 1]),       // x² + 1
        _ => None,
    }
}

/// Arithmetic tables for one finite field of order ≤ 16.
pub struct FiniteField {
    p: usize,
    d: usize,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    /// `inv[0]` is unused and stores 0.
    inv: Vec<u8>,
}

impl FiniteField {
    /// Builds and exhaustively verifies the tables for order `q`.
    pub fn new(q: usize) -> Result<FiniteField> {
        let (p, d) = match factor_prime_power(q) {
            Some(pd) if SUPPORTED_ORDERS.contains(&q) => pd,
            _ => return Err(LinerError::UnsupportedFieldOrder { q }),
        };
        let digits = |e: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(d);
            let mut r = e;
            for _ in 0..d {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a);
            let dn: Vec<usize> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = encode(&dn) as u8;
            for b in 0..q {
                let db = digits(b);
                let ds: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * q + b] = encode(&ds) as u8;

                // Polynomial product, then reduction by the irreducible.
                let mut prod = vec![0usize; 2 * d - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if d > 1 {
                    let irr = irreducible(p, d).expect("extension orders have a fixed polynomial");
                    for k in (d..prod.len()).rev() {
                        let c = prod[k];
                        if c == 0 {
                            continue;
                        }
                        prod[k] = 0;
                        for (i, &ic) in irr.iter().enumerate().take(d) {
                            let idx = k - d + i;
                            prod[idx] = (prod[idx] + c * (p - ic as usize)) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&prod[..d]) as u8;
            }
        }

        let mut inv = vec![0u8; q];
        for a in 1..q {
            let found = (1..q).find(|&b| mul[a * q + b] == 1).ok_or_else(|| {
                LinerError::UnsupportedFieldOrder { q }
            })?;
            inv[a] = found as u8;
        }

        let field = FiniteField {
            p,
            d,
            q,
            add,
            mul,
            neg,
            inv,
        };
        field.verify()?;
        Ok(field)
    }

    /// Exhaustive field-axiom and Frobenius verification; cheap for q ≤ 16.
    fn verify(&self) -> Result<()> {
        let q = self.q;
        let ok = |cond: bool| {
            if cond {
                Ok(())
            } else {
                Err(LinerError::UnsupportedFieldOrder { q })
            }
        };
        for a in 0..q {
            ok(self.add(a, 0) == a && self.mul(a, 1) == a)?;
            ok(self.add(a, self.neg(a)) == 0)?;
            if a != 0 {
                ok(self.mul(a, self.inv(a)) == 1)?;
            }
            for b in 0..q {
                ok(self.add(a, b) == self.add(b, a))?;
                ok(self.mul(a, b) == self.mul(b, a))?;
                for c in 0..q {
                    ok(self.add(self.add(a, b), c) == self.add(a, self.add(b, c)))?;
                    ok(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))?;
                    ok(self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c)))?;
                }
            }
        }
        // Frobenius x ↦ x^p: additive, multiplicative, bijective.
        let frob: Vec<usize> = (0..q).map(|a| self.pow(a, self.p as u64)).collect();
        let mut seen = vec![false; q];
        for a in 0..q {
            ok(!std::mem::replace(&mut seen[frob[a]], true))?;
            for b in 0..q {
                ok(frob[self.add(a, b)] == self.add(frob[a], frob[b]))?;
                ok(frob[self.mul(a, b)] == self.mul(frob[a], frob[b]))?;
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no multiplicative inverse");
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Writes `q = p^d` with `p` prime, if possible.
fn factor_prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q % k == 0)?;
    let mut d = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        d += 1;
    }
    if r == 1 {
        Some((p, d))
    } else {
        None
    }
}
