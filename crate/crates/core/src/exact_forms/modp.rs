//! Polynomials over a small prime field, and their factorization by
//! distinct-degree splitting followed by Cantor–Zassenhaus.

use rand::Rng;

/// Dense polynomial over `F_p`, low degree first, no trailing zeros.
pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub(crate) p: u64,
}

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Fp {
    pub(crate) fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_mod(r, a);
            }
            a = self.mul_mod(a, a);
            e >>= 1;
        }
        r
    }

    pub(crate) fn reduce(&self, coeffs: &[num_bigint::BigInt]) -> FpPoly {
        use num_traits::ToPrimitive;
        let p = num_bigint::BigInt::from(self.p);
        trim(
            coeffs
                .iter()
                .map(|c| {
                    let m = ((c % &p) + &p) % &p;
                    m.to_u64().expect("residue fits in u64")
                })
                .collect(),
        )
    }

    pub(crate) fn sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub(crate) fn mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul_mod(x, y)) % self.p;
            }
        }
        trim(out)
    }

    pub(crate) fn scale(&self, a: &[u64], c: u64) -> FpPoly {
        trim(a.iter().map(|&x| self.mul_mod(x, c)).collect())
    }

    pub(crate) fn div_rem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        let lc_inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        if rem.len() <= db {
            return (Vec::new(), trim(rem));
        }
        let mut quot = vec![0u64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mul_mod(rem[k + db], lc_inv);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + self.p - self.mul_mod(c, bj)) % self.p;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub(crate) fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub(crate) fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub(crate) fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b`.
    pub(crate) fn bezout(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        assert_eq!(r0.len(), 1, "bezout called on non-coprime polynomials");
        let inv = self.inv(r0[0]);
        (self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub(crate) fn derivative(&self, a: &[u64]) -> FpPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_mod(c, i as u64 % self.p))
                .collect(),
        )
    }

    fn pow_mod(&self, base: &[u64], mut e: u128, modulus: &[u64]) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul(&result, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.mul(&b, &b), modulus);
            }
        }
        result
    }

    pub(crate) fn is_squarefree(&self, a: &[u64]) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` with `g` the product of all irreducible factors of degree `d`.
    pub(crate) fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: FpPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.clone(), rest.len() - 1));
                break;
            }
            h = self.pow_mod(&h, self.p as u128, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`.
    pub(crate) fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let exponent = ((self.p as u128).pow(d as u32) - 1) / 2;
        loop {
            let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, exponent, f), &[1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let cofactor = self.div_rem(f, &g).0;
                let mut parts = self.equal_degree(&g, d, rng);
                parts.extend(self.equal_degree(&cofactor, d, rng));
                return parts;
            }
        }
    }

    /// All monic irreducible factors of a monic squarefree polynomial.
    pub(crate) fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }
}
