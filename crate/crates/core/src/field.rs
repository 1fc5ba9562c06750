//! Small finite fields `GF(q)` for `q` in {2, 3, 4, 5, 7, 8, 9}, with
//! precomputed addition and multiplication tables.
//!
//! An element of `GF(p^k)` is encoded as the integer whose base-`p` digits
//! are its coefficients in `F_p[x] / (modulus)`.

use crate::error::{Error, Result};

/// Field sizes with a table implementation, in increasing order.
pub const SUPPORTED_FIELDS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Clone)]
pub struct FiniteField {
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        // (characteristic, degree, monic modulus coefficients low to high)
        let (p, modulus): (u32, &[u32]) = match q {
            2 | 3 | 5 | 7 => (q, &[0, 1]),
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ => return Err(Error::UnsupportedField(q)),
        };
        let k = modulus.len() - 1;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let size = q as usize;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&sum) as u8;

                let mut prod = vec![0u32; 2 * k];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                // reduce modulo the monic modulus
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (t, m) in modulus.iter().enumerate() {
                            let idx = deg - k + t;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[(x * q + y) as usize] = encode(&prod[..k]) as u8;
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.q as usize + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q as usize + y as usize]
    }
}
