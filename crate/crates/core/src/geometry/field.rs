//! Finite fields GF(p^k) for q = p^k <= 512, with elements encoded as
//! integers 0..q-1 whose base-p digits are polynomial coefficients (constant
//! term first). Multiplication uses log/antilog tables over a primitive
//! polynomial from a hardcoded table; addition is a precomputed digit-wise
//! table for extension fields.

use super::GeometryError;

pub const MAX_Q: u32 = 512;

/// Primitive polynomials (x is a generator), encoded like field elements:
/// base-p digit integer, constant term in the lowest digit, including the
/// leading monic coefficient.
const PRIMITIVE_POLYS: &[(u32, u32)] = &[
    (4, 7),     // x^2 + x + 1
    (8, 11),    // x^3 + x + 1
    (16, 19),   // x^4 + x + 1
    (32, 37),   // x^5 + x^2 + 1
    (64, 67),   // x^6 + x + 1
    (128, 131), // x^7 + x + 1
    (256, 285), // x^8 + x^4 + x^3 + x^2 + 1
    (512, 529), // x^9 + x^4 + 1
    (9, 14),    // x^2 + x + 2
    (27, 34),   // x^3 + 2x + 1
    (81, 86),   // x^4 + x + 2
    (243, 250), // x^5 + 2x + 1
    (25, 32),   // x^2 + x + 2
    (125, 142), // x^3 + 3x + 2
    (49, 59),   // x^2 + x + 3
    (343, 366), // x^3 + 3x + 2
    (121, 139), // x^2 + x + 7
    (169, 184), // x^2 + x + 2
    (289, 309), // x^2 + x + 3
    (361, 382), // x^2 + x + 2
];

/// Decomposes q as p^k for prime p, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut t = q;
            let mut k = 0;
            while t.is_multiple_of(p) {
                t /= p;
                k += 1;
            }
            return if t == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
    add_table: Vec<u16>,
    neg_table: Vec<u16>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteField(q={}={}^{})", self.q, self.p, self.k)
    }
}

fn to_digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl FiniteField {
    pub fn new(q: u32) -> Result<FiniteField, GeometryError> {
        let (p, k) = prime_power(q).ok_or(GeometryError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(GeometryError::QTooLarge { q, max: MAX_Q });
        }
        let mut field = FiniteField {
            p,
            k,
            q,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        if k > 1 {
            let poly = PRIMITIVE_POLYS
                .iter()
                .find(|&&(pq, _)| pq == q)
                .map(|&(_, poly)| poly)
                .expect("primitive polynomial table covers all prime powers <= 512");
            field.build_tables(poly);
        }
        Ok(field)
    }

    #[allow(clippy::needless_range_loop)]
    fn build_tables(&mut self, poly: u32) {
        let (p, k, q) = (self.p, self.k, self.q);
        // exp[i] = x^i; multiplication by x is a digit shift reduced by poly.
        let poly_digits = to_digits(poly, p, k as usize + 1);
        let mut exp = vec![0u16; 2 * q as usize];
        let mut log = vec![0u16; q as usize];
        let mut cur: Vec<u32> = {
            let mut d = vec![0; k as usize + 1];
            d[0] = 1;
            d
        };
        for i in 0..(q - 1) as usize {
            let val = from_digits(&cur[..k as usize], p);
            exp[i] = val as u16;
            log[val as usize] = i as u16;
            // cur *= x mod poly
            for j in (1..=k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            let lead = cur[k as usize];
            if lead != 0 {
                for j in 0..=k as usize {
                    cur[j] = (cur[j] + p - lead * poly_digits[j] % p) % p;
                }
            }
        }
        assert_eq!(
            from_digits(&cur[..k as usize], p),
            1,
            "polynomial {poly} is not primitive for q={q}"
        );
        for i in (q - 1) as usize..2 * q as usize {
            exp[i] = exp[i - (q - 1) as usize];
        }
        self.exp = exp;
        self.log = log;
        self.add_table = (0..q * q)
            .map(|idx| {
                let (a, b) = (idx / q, idx % q);
                let da = to_digits(a, p, k as usize);
                let db = to_digits(b, p, k as usize);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                from_digits(&sum, p) as u16
            })
            .collect();
        self.neg_table = (0..q)
            .map(|a| {
                let da = to_digits(a, p, k as usize);
                let nd: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
                from_digits(&nd, p) as u16
            })
            .collect();
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.k == 1 {
            ((a as u32 + b as u32) % self.p) as u16
        } else {
            self.add_table[a as usize * self.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        if self.k == 1 {
            ((self.p - a as u32) % self.p) as u16
        } else {
            self.neg_table[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else if self.k == 1 {
            ((a as u32 * b as u32) % self.p) as u16
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "zero has no inverse");
        if self.k == 1 {
            self.pow(a, (self.p - 2) as u64)
        } else {
            let l = self.log[a as usize] as usize;
            self.exp[(self.q as usize - 1 - l) % (self.q as usize - 1)]
        }
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc: u16 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    // ---- vector helpers over the field ----

    pub fn dot(&self, u: &[u16], v: &[u16]) -> u16 {
        u.iter()
            .zip(v)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Scales `v` so its first nonzero coordinate is 1; `None` for the zero
    /// vector.
    pub fn normalize(&self, v: &[u16]) -> Option<Vec<u16>> {
        let lead = v.iter().copied().find(|&c| c != 0)?;
        let inv = self.inv(lead);
        Some(v.iter().map(|&c| self.mul(inv, c)).collect())
    }

    /// All projective points of PG(dim-1, q) in lexicographic order, each
    /// normalized (first nonzero coordinate 1).
    pub fn projective_points(&self, dim: usize) -> Vec<Vec<u16>> {
        let q = self.q as usize;
        let mut out = Vec::new();
        for lead in (0..dim).rev() {
            // coords[0..lead] free would break normalization; instead:
            // coords before `lead` are zero, coords[lead] = 1, rest free.
            let free = dim - lead - 1;
            let total = (q as u64).pow(free as u32);
            for mut idx in 0..total {
                let mut v = vec![0u16; dim];
                v[lead] = 1;
                for slot in v[lead + 1..].iter_mut() {
                    *slot = (idx % q as u64) as u16;
                    idx /= q as u64;
                }
                out.push(v);
            }
        }
        out.sort_unstable();
        out
    }

    /// Basis of the right nullspace of `rows` (each of length `ncols`).
    #[allow(clippy::needless_range_loop)]
    pub fn nullspace(&self, rows: &[Vec<u16>], ncols: usize) -> Vec<Vec<u16>> {
        let mut mat: Vec<Vec<u16>> = rows.to_vec();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(pr) = (rank..mat.len()).find(|&r| mat[r][c] != 0) else {
                continue;
            };
            mat.swap(rank, pr);
            let inv = self.inv(mat[rank][c]);
            for x in mat[rank].iter_mut() {
                *x = self.mul(inv, *x);
            }
            for r in 0..mat.len() {
                if r != rank && mat[r][c] != 0 {
                    let f = mat[r][c];
                    for j in 0..ncols {
                        let t = self.mul(f, mat[rank][j]);
                        mat[r][j] = self.sub(mat[r][j], t);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == mat.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for fc in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u16; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(mat[r][fc]);
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form of a 2-row matrix, as the canonical key of
    /// the projective line spanned by the rows.
    pub fn line_key(&self, r1: &[u16], r2: &[u16]) -> Vec<u16> {
        let ncols = r1.len();
        let mut a = r1.to_vec();
        let mut b = r2.to_vec();
        let lead_a = a.iter().position(|&c| c != 0).expect("zero row");
        if let Some(lead_b) = b.iter().position(|&c| c != 0) {
            if lead_b < lead_a {
                std::mem::swap(&mut a, &mut b);
            }
        }
        let la = a.iter().position(|&c| c != 0).unwrap();
        let inv = self.inv(a[la]);
        for x in a.iter_mut() {
            *x = self.mul(inv, *x);
        }
        let f = b[la];
        if f != 0 {
            for j in 0..ncols {
                let t = self.mul(f, a[j]);
                b[j] = self.sub(b[j], t);
            }
        }
        let lb = b
            .iter()
            .position(|&c| c != 0)
            .expect("rows not independent");
        let inv = self.inv(b[lb]);
        for x in b.iter_mut() {
            *x = self.mul(inv, *x);
        }
        let f = a[lb];
        if f != 0 {
            for j in 0..ncols {
                let t = self.mul(f, b[j]);
                a[j] = self.sub(a[j], t);
            }
        }
        a.extend_from_slice(&b);
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(field: &FiniteField) {
        let q = field.q() as u16;
        for a in 0..q {
            assert_eq!(field.add(a, 0), a);
            assert_eq!(field.mul(a, 1), a);
            assert_eq!(field.add(a, field.neg(a)), 0);
            if a != 0 {
                assert_eq!(field.mul(a, field.inv(a)), 1, "inverse of {a}");
            }
            for b in 0..q {
                assert_eq!(field.add(a, b), field.add(b, a));
                assert_eq!(field.mul(a, b), field.mul(b, a));
                for c in 0..q {
                    assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
                    assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
                    assert_eq!(
                        field.mul(a, field.add(b, c)),
                        field.add(field.mul(a, b), field.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_q() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn inverses_exhaustive_up_to_64() {
        for q in 2..=64u32 {
            if prime_power(q).is_none() {
                continue;
            }
            let f = FiniteField::new(q).unwrap();
            for a in 1..q as u16 {
                assert_eq!(f.mul(a, f.inv(a)), 1, "q={q}, a={a}");
            }
        }
    }

    #[test]
    fn large_fields_construct() {
        for q in [81u32, 121, 125, 128, 169, 243, 256, 289, 343, 361, 512] {
            let f = FiniteField::new(q).unwrap();
            // x (element p) generates the multiplicative group.
            let x = f.characteristic() as u16;
            let mut seen = std::collections::HashSet::new();
            let mut cur = 1u16;
            for _ in 0..q - 1 {
                assert!(seen.insert(cur));
                cur = f.mul(cur, x);
            }
            assert_eq!(cur, 1);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(matches!(
            FiniteField::new(6),
            Err(GeometryError::NotPrimePower(6))
        ));
        assert!(matches!(
            FiniteField::new(12),
            Err(GeometryError::NotPrimePower(12))
        ));
        assert!(matches!(
            FiniteField::new(1024),
            Err(GeometryError::QTooLarge { .. })
        ));
    }

    #[test]
    fn projective_point_counts() {
        let f = FiniteField::new(3).unwrap();
        assert_eq!(f.projective_points(3).len(), 13);
        assert_eq!(f.projective_points(4).len(), 40);
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.projective_points(3).len(), 21);
    }

    #[test]
    fn nullspace_dimensions() {
        let f = FiniteField::new(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4]];
        let ns = f.nullspace(&rows, 4);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert_eq!(f.dot(&rows[0], v), 0);
        }
    }

    #[test]
    fn line_key_is_span_invariant() {
        let f = FiniteField::new(7).unwrap();
        let a = vec![1, 2, 3];
        let b = vec![0, 1, 5];
        // lin. combos span the same line
        let c: Vec<u16> = (0..3).map(|i| f.add(a[i], f.mul(3, b[i]))).collect();
        let d: Vec<u16> = (0..3).map(|i| f.add(f.mul(2, a[i]), b[i])).collect();
        assert_eq!(f.line_key(&a, &b), f.line_key(&c, &d));
    }
}
