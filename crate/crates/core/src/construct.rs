//! The hat construction: add a disjoint path `x - x' - y' - y` on four new
//! vertices `n, n+1, n+2, n+3` and join every original vertex to `x` and `y`.

use thiserror::Error;

use crate::canon::is_isomorphic;
use crate::chromatic::chromatic_poly;
use crate::graph::{Graph, MAX_VERTICES};
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("result would have {order} vertices, more than {MAX_VERTICES}")]
pub struct SizeError {
    pub order: usize,
}

pub fn hat(g: &Graph) -> Result<Graph, SizeError> {
    let n = g.order();
    if n + 4 > MAX_VERTICES {
        return Err(SizeError { order: n + 4 });
    }
    let (x, xp, yp, y) = (n, n + 1, n + 2, n + 3);
    let mut out = Graph::empty(n + 4);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    out.add_edge(x, xp);
    out.add_edge(xp, yp);
    out.add_edge(yp, y);
    for v in 0..n {
        out.add_edge(v, x);
        out.add_edge(v, y);
    }
    Ok(out)
}

/// Applies [`hat`] `times` times.
pub fn iterate_hat(g: &Graph, times: usize) -> Result<Graph, SizeError> {
    let order = g.order() + 4 * times;
    if order > MAX_VERTICES {
        return Err(SizeError { order });
    }
    let mut cur = g.clone();
    for _ in 0..times {
        cur = hat(&cur)?;
    }
    Ok(cur)
}

/// `P_hat(k) = k(k-1)((k-2) P(k-1) + (k(k-3)+3) P(k-2))`, built from `P = P_g`.
pub fn hat_chromatic_from(p: &UniPoly) -> UniPoly {
    let k = UniPoly::k();
    let outer = &k * &UniPoly::linear(-1);
    let quad = UniPoly::from_i64s(&[3, -3, 1]);
    let inner = &(&UniPoly::linear(-2) * &p.shift(-1)) + &(&quad * &p.shift(-2));
    &outer * &inner
}

/// The chromatic polynomial of `hat(g)` obtained from that of `g`.
pub fn hat_chromatic_identity(g: &Graph) -> UniPoly {
    hat_chromatic_from(&chromatic_poly(g))
}

/// Label map taking `complement(hat(g))` onto `hat(complement(g))`.
///
/// The complement of the path `x x' y' y` is the path `x' y x y'`, whose
/// endpoints `x'`, `y'` are the ones joined to every original vertex.
pub fn commuting_relabeling(n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    // x -> y', x' -> x, y' -> y, y -> x'
    perm.extend([n + 2, n, n + 3, n + 1]);
    perm
}

/// Whether `complement(hat(g))` equals `hat(complement(g))` under
/// [`commuting_relabeling`] and, independently, is isomorphic to it.
pub fn complement_commutes(g: &Graph) -> Result<bool, SizeError> {
    let left = hat(g)?.complement();
    let right = hat(&g.complement())?;
    let exact = left.relabel(&commuting_relabeling(g.order())) == right;
    Ok(exact && is_isomorphic(&left, &right))
}
