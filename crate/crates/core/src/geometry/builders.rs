//! The built-in incidence constructions. Each returns a certified
//! [`IncidenceStructure`]; parameter or girth mismatches abort with a
//! certificate error instead of returning bad data.

use super::field::FiniteField;
use super::octonion::{zorn_mul, Zorn};
use super::{GeometryError, IncidenceStructure, StructureParams};
use crate::graphs::{BipartiteGraph, Girth};
use std::collections::BTreeSet;

/// Projective points of the span of `basis` (assumed independent):
/// normalized coefficient vectors applied to the basis, re-normalized.
fn span_points(field: &FiniteField, basis: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let dim = basis.len();
    let ncols = basis.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for coeffs in normalized_tuples(field, dim) {
        let mut v = vec![0u16; ncols];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                for (slot, &x) in v.iter_mut().zip(b) {
                    *slot = field.add(*slot, field.mul(*c, x));
                }
            }
        }
        out.push(field.normalize(&v).expect("dependent basis"));
    }
    out
}

/// Visits every tuple of length `dim` whose first nonzero entry is 1,
/// reusing one buffer; avoids materializing large projective spaces.
fn for_each_normalized_tuple(field: &FiniteField, dim: usize, mut visit: impl FnMut(&[u16])) {
    let q = field.q() as u64;
    let mut v = vec![0u16; dim];
    for lead in (0..dim).rev() {
        v.fill(0);
        v[lead] = 1;
        let free = dim - lead - 1;
        for mut idx in 0..q.pow(free as u32) {
            for slot in v[lead + 1..].iter_mut() {
                *slot = (idx % q) as u16;
                idx /= q;
            }
            visit(&v);
        }
    }
}

/// All tuples of length `dim` whose first nonzero entry is 1.
fn normalized_tuples(field: &FiniteField, dim: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for_each_normalized_tuple(field, dim, |v| out.push(v.to_vec()));
    out
}

/// Rewrites `basis` so that its first element is `p` (which must lie in the
/// span), using the exchange step on a nonzero coordinate.
#[allow(clippy::needless_range_loop)]
fn basis_through(field: &FiniteField, basis: &[Vec<u16>], p: &[u16]) -> Vec<Vec<u16>> {
    let ncols = p.len();
    // Solve sum alpha_i basis_i = p by Gaussian elimination on [basis^T | p].
    let mut rows: Vec<Vec<u16>> = (0..ncols)
        .map(|c| {
            let mut row: Vec<u16> = basis.iter().map(|b| b[c]).collect();
            row.push(p[c]);
            row
        })
        .collect();
    let k = basis.len();
    let mut alpha = vec![0u16; k];
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for c in 0..k {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(inv, *x);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..=k {
                    let t = field.mul(f, rows[rank][j]);
                    rows[r][j] = field.sub(rows[r][j], t);
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    for (r, &c) in pivot_cols.iter().enumerate() {
        alpha[c] = rows[r][k];
    }
    let lead = alpha
        .iter()
        .position(|&x| x != 0)
        .expect("p not in span of basis");
    let mut out = vec![p.to_vec()];
    for (i, b) in basis.iter().enumerate() {
        if i != lead {
            out.push(b.clone());
        }
    }
    out
}

/// Points and lines of PG(2, q) with containment incidence:
/// (m, n, a, b) = (q^2+q+1, q^2+q+1, q+1, q+1), girth 6.
pub fn projective_plane(q: u32) -> Result<IncidenceStructure, GeometryError> {
    let field = FiniteField::new(q)?;
    let pts = field.projective_points(3);
    let count = pts.len();
    let mut g = BipartiteGraph::new(count, count);
    for (li, line) in pts.iter().enumerate() {
        let basis = field.nullspace(std::slice::from_ref(line), 3);
        debug_assert_eq!(basis.len(), 2);
        for p in span_points(&field, &basis) {
            let pi = pts.binary_search(&p).expect("point enumeration is sorted");
            g.add_edge(li, pi);
        }
    }
    let s = q as usize;
    IncidenceStructure::certified(
        g,
        "projective_plane",
        q,
        StructureParams {
            m: s * s + s + 1,
            n: s * s + s + 1,
            a: s + 1,
            b: s + 1,
        },
        Girth::Finite(6),
    )
}

const MAX_Q_QUADRANGLE: u32 = 64;

/// The symplectic generalized quadrangle W(3, q): all points of PG(3, q)
/// and the totally isotropic lines of the symplectic form
/// x0 y1 - x1 y0 + x2 y3 - x3 y2. Parameters ((q+1)(q^2+1) on both sides,
/// a = b = q+1), girth 8.
pub fn symplectic_quadrangle(q: u32) -> Result<IncidenceStructure, GeometryError> {
    if q > MAX_Q_QUADRANGLE {
        return Err(GeometryError::QTooLarge {
            q,
            max: MAX_Q_QUADRANGLE,
        });
    }
    let field = FiniteField::new(q)?;
    let pts = field.projective_points(4);
    let mut line_keys: BTreeSet<Vec<u16>> = BTreeSet::new();
    for p in &pts {
        // perp(p) is the kernel of y -> <p, y>; every line through p inside
        // it is totally isotropic (the form is alternating).
        let row = vec![field.neg(p[1]), p[0], field.neg(p[3]), p[2]];
        let perp = field.nullspace(&[row], 4);
        debug_assert_eq!(perp.len(), 3);
        let based = basis_through(&field, &perp, p);
        let (c1, c2) = (&based[1], &based[2]);
        for lambda in field.elements() {
            let z: Vec<u16> = c1
                .iter()
                .zip(c2)
                .map(|(&x, &y)| field.add(x, field.mul(lambda, y)))
                .collect();
            line_keys.insert(field.line_key(p, &z));
        }
        line_keys.insert(field.line_key(p, c2));
    }
    let lines: Vec<Vec<u16>> = line_keys.into_iter().collect();
    let mut g = BipartiteGraph::new(lines.len(), pts.len());
    for (li, key) in lines.iter().enumerate() {
        let (r1, r2) = key.split_at(4);
        for p in span_points(&field, &[r1.to_vec(), r2.to_vec()]) {
            let pi = pts.binary_search(&p).expect("point enumeration is sorted");
            g.add_edge(li, pi);
        }
    }
    let s = q as usize;
    let count = (s + 1) * (s * s + 1);
    IncidenceStructure::certified(
        g,
        "symplectic_quadrangle",
        q,
        StructureParams {
            m: count,
            n: count,
            a: s + 1,
            b: s + 1,
        },
        Girth::Finite(8),
    )
}

const MAX_Q_HEXAGON: u32 = 16;

/// The split Cayley hexagon H(q) in its split-octonion model. Points are the
/// projective trace-zero null octonions, i.e. the points of the parabolic
/// quadric a^2 + v.w = 0 in the 7-space of trace-zero Zorn matrices. Two
/// quadric-collinear points x, y span a hexagon line exactly when their
/// octonion products xy and yx vanish; the lines through x form a pencil
/// inside a plane, recovered here as the common kernel of left and right
/// multiplication by x intersected with the polar hyperplane of x.
/// Parameters ((q+1)(q^4+q^2+1) on both sides, a = b = q+1), girth 12.
pub fn split_cayley_hexagon(q: u32) -> Result<IncidenceStructure, GeometryError> {
    if q > MAX_Q_HEXAGON {
        return Err(GeometryError::QTooLarge {
            q,
            max: MAX_Q_HEXAGON,
        });
    }
    let field = FiniteField::new(q)?;
    let quadric = |c: &[u16]| {
        // Q(c) = c0^2 + v.w on trace-zero coordinates (c0, v, w).
        field.add(field.mul(c[0], c[0]), field.dot(&c[1..4], &c[4..7]))
    };
    let pts: Vec<Vec<u16>> = {
        let mut all = Vec::new();
        for_each_normalized_tuple(&field, 7, |v| {
            if quadric(v) == 0 {
                all.push(v.to_vec());
            }
        });
        all.sort_unstable();
        all
    };
    let bilinear = |x: &[u16], y: &[u16]| {
        // Polarization B(x, y) = Q(x+y) - Q(x) - Q(y).
        let sum: Vec<u16> = x.iter().zip(y).map(|(&a, &b)| field.add(a, b)).collect();
        field.sub(field.sub(quadric(&sum), quadric(x)), quadric(y))
    };
    let unit = |j: usize| {
        let mut e = vec![0u16; 7];
        e[j] = 1;
        e
    };
    let mut line_keys: BTreeSet<Vec<u16>> = BTreeSet::new();
    for x in &pts {
        let ox = Zorn::from_trace_zero(&field, x);
        // 17 linear conditions on y: the 8 components of x*y, the 8 of y*x,
        // and B(x, y).
        let mut rows = vec![vec![0u16; 7]; 17];
        for (j, e) in (0..7).map(|j| (j, unit(j))) {
            let oe = Zorn::from_trace_zero(&field, &e);
            let xe = zorn_mul(&field, &ox, &oe);
            let ex = zorn_mul(&field, &oe, &ox);
            let comps = [
                xe.a, xe.v[0], xe.v[1], xe.v[2], xe.w[0], xe.w[1], xe.w[2], xe.b, ex.a, ex.v[0],
                ex.v[1], ex.v[2], ex.w[0], ex.w[1], ex.w[2], ex.b,
            ];
            for (r, &val) in comps.iter().enumerate() {
                rows[r][j] = val;
            }
            rows[16][j] = bilinear(x, &e);
        }
        let pencil_plane = field.nullspace(&rows, 7);
        let mut members: Vec<Vec<u16>> = span_points(&field, &pencil_plane)
            .into_iter()
            .filter(|y| quadric(y) == 0)
            .collect();
        members.sort_unstable();
        let mut covered: BTreeSet<Vec<u16>> = BTreeSet::new();
        for y in &members {
            if y == x || covered.contains(y) {
                continue;
            }
            // The whole projective line through x and y must consist of
            // hexagon points.
            for z in span_points(&field, &[x.clone(), y.clone()]) {
                if z != *x {
                    if pts.binary_search(&z).is_err() {
                        return Err(GeometryError::Certificate {
                            builder: "split_cayley_hexagon".into(),
                            detail: "pencil line leaves the quadric".into(),
                        });
                    }
                    covered.insert(z);
                }
            }
            line_keys.insert(field.line_key(x, y));
        }
    }
    let lines: Vec<Vec<u16>> = line_keys.into_iter().collect();
    let mut g = BipartiteGraph::new(lines.len(), pts.len());
    for (li, key) in lines.iter().enumerate() {
        let (r1, r2) = key.split_at(7);
        for p in span_points(&field, &[r1.to_vec(), r2.to_vec()]) {
            let pi = pts
                .binary_search(&p)
                .expect("line point is a quadric point");
            g.add_edge(li, pi);
        }
    }
    let s = q as usize;
    let count = (s + 1) * (s * s * s * s + s * s + 1);
    IncidenceStructure::certified(
        g,
        "split_cayley_hexagon",
        q,
        StructureParams {
            m: count,
            n: count,
            a: s + 1,
            b: s + 1,
        },
        Girth::Finite(12),
    )
}

const MAX_Q_HERMITIAN: u32 = 8;

/// The Hermitian curve in PG(2, q^2) against its secant lines: left part the
/// q^3+1 curve points (each on q^2 secants), right part the q^4-q^3+q^2
/// secants (each holding q+1 curve points). Four-cycle-free: two curve
/// points lie on exactly one common secant.
pub fn hermitian_secant_graph(q: u32) -> Result<IncidenceStructure, GeometryError> {
    if q > MAX_Q_HERMITIAN {
        return Err(GeometryError::QTooLarge {
            q,
            max: MAX_Q_HERMITIAN,
        });
    }
    // Reject q that are not prime powers before squaring.
    super::field::prime_power(q).ok_or(GeometryError::NotPrimePower(q))?;
    let field = FiniteField::new(q * q)?;
    let qe = q as u64;
    let hermitian_norm = |e: u16| field.mul(e, field.pow(e, qe));
    let all = field.projective_points(3);
    let curve: Vec<Vec<u16>> = all
        .iter()
        .filter(|p| {
            field.add(
                field.add(hermitian_norm(p[0]), hermitian_norm(p[1])),
                hermitian_norm(p[2]),
            ) == 0
        })
        .cloned()
        .collect();
    let expected_m = (qe * qe * qe + 1) as usize;
    if curve.len() != expected_m {
        return Err(GeometryError::Certificate {
            builder: "hermitian_secant_graph".into(),
            detail: format!("curve has {} points, expected {expected_m}", curve.len()),
        });
    }
    let mut secants: Vec<Vec<usize>> = Vec::new();
    for line in &all {
        let on: Vec<usize> = curve
            .iter()
            .enumerate()
            .filter(|(_, p)| field.dot(line, p) == 0)
            .map(|(i, _)| i)
            .collect();
        match on.len() {
            0 | 1 => {}
            l if l == qe as usize + 1 => secants.push(on),
            other => {
                return Err(GeometryError::Certificate {
                    builder: "hermitian_secant_graph".into(),
                    detail: format!("a line meets the curve in {other} points"),
                })
            }
        }
    }
    let expected_n = (qe * qe * qe * qe - qe * qe * qe + qe * qe) as usize;
    // Unique-secant double count: n * C(q+1, 2) = C(m, 2).
    let pairs_via_secants = secants.len() * (qe as usize + 1) * qe as usize / 2;
    if pairs_via_secants != expected_m * (expected_m - 1) / 2 {
        return Err(GeometryError::Certificate {
            builder: "hermitian_secant_graph".into(),
            detail: "secants do not cover every point pair exactly once".into(),
        });
    }
    let mut g = BipartiteGraph::new(curve.len(), secants.len());
    for (si, on) in secants.iter().enumerate() {
        for &pi in on {
            g.add_edge(pi, si);
        }
    }
    IncidenceStructure::certified(
        g,
        "hermitian_secant_graph",
        q,
        StructureParams {
            m: expected_m,
            n: expected_n,
            a: qe as usize + 1,
            b: (qe * qe) as usize,
        },
        Girth::Finite(6),
    )
}
