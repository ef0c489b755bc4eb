//! Split octonions as Zorn vector matrices over a finite field, used to
//! coordinatize the split Cayley hexagon: hexagon points are the projective
//! trace-zero null octonions, and two such points span a hexagon line
//! exactly when their products vanish both ways.

use super::field::FiniteField;

/// Zorn vector matrix ((a, v), (w, b)) with scalars a, b and 3-vectors v, w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zorn {
    pub a: u16,
    pub v: [u16; 3],
    pub w: [u16; 3],
    pub b: u16,
}

impl Zorn {
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0 && self.v == [0; 3] && self.w == [0; 3]
    }

    /// Embeds a 7-coordinate trace-zero vector (a, v1..v3, w1..w3).
    pub fn from_trace_zero(field: &FiniteField, c: &[u16]) -> Zorn {
        debug_assert_eq!(c.len(), 7);
        Zorn {
            a: c[0],
            v: [c[1], c[2], c[3]],
            w: [c[4], c[5], c[6]],
            b: field.neg(c[0]),
        }
    }
}

fn cross(f: &FiniteField, u: &[u16; 3], v: &[u16; 3]) -> [u16; 3] {
    [
        f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
        f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
        f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0])),
    ]
}

fn dot3(f: &FiniteField, u: &[u16; 3], v: &[u16; 3]) -> u16 {
    f.add(
        f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1])),
        f.mul(u[2], v[2]),
    )
}

/// Zorn matrix product:
/// (a, v; w, b)(a', v'; w', b') =
///   (aa' + v.w',  av' + b'v - w x w';  a'w + bw' + v x v',  bb' + w.v').
pub fn zorn_mul(f: &FiniteField, x: &Zorn, y: &Zorn) -> Zorn {
    let cv = cross(f, &x.w, &y.w);
    let cw = cross(f, &x.v, &y.v);
    let mut v = [0u16; 3];
    let mut w = [0u16; 3];
    for i in 0..3 {
        v[i] = f.sub(f.add(f.mul(x.a, y.v[i]), f.mul(y.b, x.v[i])), cv[i]);
        w[i] = f.add(f.add(f.mul(y.a, x.w[i]), f.mul(x.b, y.w[i])), cw[i]);
    }
    Zorn {
        a: f.add(f.mul(x.a, y.a), dot3(f, &x.v, &y.w)),
        v,
        w,
        b: f.add(f.mul(x.b, y.b), dot3(f, &x.w, &y.v)),
    }
}

/// Norm (determinant) N(x) = ab - v.w; multiplicative for the product above.
#[cfg_attr(not(test), allow(dead_code))]
pub fn zorn_norm(f: &FiniteField, x: &Zorn) -> u16 {
    f.sub(f.mul(x.a, x.b), dot3(f, &x.v, &x.w))
}
