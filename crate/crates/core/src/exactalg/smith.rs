use super::{Poly, PolyMat};

/// Smith normal form `U * M * V = D` over `Q[x]`, with the inverses of the
/// unimodular transforms tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMat,
    pub d: PolyMat,
    pub v: PolyMat,
    pub u_inv: PolyMat,
    pub v_inv: PolyMat,
}

impl SmithForm {
    /// Nonzero diagonal entries, each monic and dividing the next.
    pub fn invariant_factors(&self) -> impl Iterator<Item = &Poly> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| &self.d[(i, i)]).filter(|p| !p.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().count()
    }
}

/// Elimination state. Transforms are tracked only when present, so callers
/// that need just the diagonal skip most of the work.
struct Reducer {
    a: PolyMat,
    u: Option<PolyMat>,
    u_inv: Option<PolyMat>,
    v: Option<PolyMat>,
    v_inv: Option<PolyMat>,
}

impl Reducer {
    fn new(m: &PolyMat, left: bool, left_inv: bool, right: bool, right_inv: bool) -> Self {
        let (rows, cols) = m.shape();
        let id = |on: bool, n: usize| on.then(|| PolyMat::identity(n));
        Reducer {
            a: m.clone(),
            u: id(left, rows),
            u_inv: id(left_inv, rows),
            v: id(right, cols),
            v_inv: id(right_inv, cols),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(u_inv) = &mut self.u_inv {
            u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(v_inv) = &mut self.v_inv {
            v_inv.swap_rows(i, j);
        }
    }

    /// `row[target] += q * row[source]`
    fn row_op(&mut self, target: usize, source: usize, q: &Poly) {
        self.a.add_row_multiple(target, source, q);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, q);
        }
        if let Some(u_inv) = &mut self.u_inv {
            u_inv.add_col_multiple(source, target, &-q);
        }
    }

    /// `col[target] += q * col[source]`
    fn col_op(&mut self, target: usize, source: usize, q: &Poly) {
        self.a.add_col_multiple(target, source, q);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, q);
        }
        if let Some(v_inv) = &mut self.v_inv {
            v_inv.add_row_multiple(source, target, &-q);
        }
    }

    fn min_degree_entry(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<((usize, usize), usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(d) = self.a[(i, j)].degree() {
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some(((i, j), d));
                    }
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clears row and column `t` apart from the pivot. Returns false if some
    /// remainder was left behind, in which case the pivot search restarts.
    fn eliminate(&mut self, t: usize) -> bool {
        let (m, n) = self.a.shape();
        let mut clean = true;
        for i in t + 1..m {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.a[(i, t)].div_rem(&self.a[(t, t)]);
            self.row_op(i, t, &-q);
            clean &= r.is_zero();
        }
        for j in t + 1..n {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.a[(t, j)].div_rem(&self.a[(t, t)]);
            self.col_op(j, t, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let (m, n) = self.a.shape();
        let piv = &self.a[(t, t)];
        (t + 1..m).find(|&i| (t + 1..n).any(|j| !piv.divides(&self.a[(i, j)])))
    }
}

impl Reducer {
    fn run(&mut self) {
        let (rows, cols) = self.a.shape();
        for t in 0..rows.min(cols) {
            while let Some((i, j)) = self.min_degree_entry(t) {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                if !self.eliminate(t) {
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.row_op(t, i, &Poly::one()),
                    None => break,
                }
            }
            if let Some(lc) = self.a[(t, t)].leading().cloned() {
                let inv = lc.recip();
                self.a.scale_row(t, &inv);
                if let Some(u) = &mut self.u {
                    u.scale_row(t, &inv);
                }
                if let Some(u_inv) = &mut self.u_inv {
                    u_inv.scale_col(t, &lc);
                }
            }
        }
    }
}

/// Smith normal form by gcd-driven row and column reduction. Diagonal entries
/// are monic and each divides the next. The identity `U * M * V = D` and the
/// tracked inverses are re-verified before returning.
pub fn smith_normal_form(m: &PolyMat) -> SmithForm {
    let mut r = Reducer::new(m, true, true, true, true);
    r.run();
    let some = |x: Option<PolyMat>| x.expect("tracked");
    let form = SmithForm { u: some(r.u), d: r.a, v: some(r.v), u_inv: some(r.u_inv), v_inv: some(r.v_inv) };
    assert_eq!(form.u.mul(m).mul(&form.v), form.d, "Smith form identity failed");
    assert!(form.u.mul(&form.u_inv).is_identity(), "left transform inverse failed");
    assert!(form.v.mul(&form.v_inv).is_identity(), "right transform inverse failed");
    form
}

/// Only the diagonal `D` of the Smith form, without transforms.
pub fn smith_diagonal(m: &PolyMat) -> PolyMat {
    let mut r = Reducer::new(m, false, false, false, false);
    r.run();
    r.a
}

/// `(D, U^-1)`; unverified, for callers that check their own result.
pub(crate) fn smith_with_left_inverse(m: &PolyMat) -> (PolyMat, PolyMat) {
    let mut r = Reducer::new(m, false, true, false, false);
    r.run();
    (r.a, r.u_inv.expect("tracked"))
}
