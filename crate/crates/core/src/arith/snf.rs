use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{FiniteAbelianGroup, GroupElement};

type Matrix = Vec<Vec<BigInt>>;

/// Result of a Smith normal form computation on a relation matrix: the
/// quotient group Z^n / (row lattice), together with the column change of
/// basis so that elements map both ways between generator coordinates and
/// invariant-factor coordinates.
#[derive(Debug, Clone)]
pub struct SmithPresentation {
    group: FiniteAbelianGroup,
    /// full diagonal (one entry per generator, 0 = free)
    diagonal: Vec<BigInt>,
    /// indices of diagonal entries with d >= 2, in group order
    kept: Vec<usize>,
    v: Matrix,
    vinv: Matrix,
}

impl SmithPresentation {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteAbelianGroup {
        self.group
    }

    /// Map a coordinate vector over the original generators to invariant
    /// coordinates. Requires a finite quotient.
    pub fn project(&self, coords: &[BigInt]) -> GroupElement {
        assert!(self.group.is_finite(), "projection needs a finite quotient");
        let n = self.v.len();
        assert_eq!(coords.len(), n);
        let mut full = vec![BigInt::zero(); n];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, f) in full.iter_mut().enumerate() {
                *f += c * &self.v[i][j];
            }
        }
        self.group
            .reduce(self.kept.iter().map(|&j| full[j].clone()).collect())
    }

    /// Lift an invariant-coordinate element back to generator coordinates.
    pub fn lift(&self, e: &GroupElement) -> Vec<BigInt> {
        let n = self.v.len();
        let mut full = vec![BigInt::zero(); n];
        for (k, &j) in self.kept.iter().enumerate() {
            full[j] = e.coords[k].clone();
        }
        let mut out = vec![BigInt::zero(); n];
        for (j, f) in full.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += f * &self.vinv[j][i];
            }
        }
        out
    }

    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

struct Snf {
    a: Matrix,
    v: Matrix,
    vinv: Matrix,
    rows: usize,
    cols: usize,
}

impl Snf {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.vinv.swap(i, j);
    }

    // col_j += q * col_i
    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            let t = &row[i] * q;
            row[j] += t;
        }
        for row in &mut self.v {
            let t = &row[i] * q;
            row[j] += t;
        }
        // vinv: row_i -= q * row_j
        let rj = self.vinv[j].clone();
        for (x, y) in self.vinv[i].iter_mut().zip(rj.iter()) {
            *x -= q * y;
        }
    }

    fn negate_col(&mut self, i: usize) {
        for row in &mut self.a {
            row[i] = -row[i].clone();
        }
        for row in &mut self.v {
            row[i] = -row[i].clone();
        }
        for x in &mut self.vinv[i] {
            *x = -x.clone();
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    // row_j += q * row_i
    fn add_row(&mut self, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let ri = self.a[i].clone();
        for (x, y) in self.a[j].iter_mut().zip(ri.iter()) {
            *x += q * y;
        }
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.a[i][j].abs() < self.a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0usize;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            self.swap_rows(t, i);
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            self.swap_cols(t, j);
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_col(t);
            }
            t += 1;
        }
        // enforce the divisibility chain d_i | d_{i+1}
        let r = self.rows.min(self.cols);
        loop {
            let mut fixed = true;
            for i in 0..r.saturating_sub(1) {
                let (di, dj) = (self.a[i][i].clone(), self.a[i + 1][i + 1].clone());
                if di.is_zero() {
                    if !dj.is_zero() {
                        self.swap_rows(i, i + 1);
                        self.swap_cols(i, i + 1);
                        fixed = false;
                    }
                    continue;
                }
                if !(&dj % &di).is_zero() {
                    // fold the (i+1)-st diagonal entry into the i-th 2x2 block
                    self.add_col(i, i + 1, &BigInt::from(1));
                    // re-reduce the 2x2 block with row/col gcd steps
                    loop {
                        if self.a[i + 1][i].is_zero() {
                            break;
                        }
                        let q = -(&self.a[i + 1][i] / &self.a[i][i]);
                        self.add_row(i + 1, i, &q);
                        if self.a[i + 1][i].is_zero() {
                            break;
                        }
                        self.swap_rows(i, i + 1);
                    }
                    // clear fill-in above/right of the block
                    if !self.a[i][i + 1].is_zero() {
                        let q = -(&self.a[i][i + 1] / &self.a[i][i]);
                        self.add_col(i + 1, i, &q);
                    }
                    if self.a[i][i].is_negative() {
                        self.negate_col(i);
                    }
                    if self.a[i + 1][i + 1].is_negative() {
                        self.negate_col(i + 1);
                    }
                    fixed = false;
                }
            }
            if fixed {
                break;
            }
        }
    }
}

/// Smith normal form of an integer relation matrix. Rows are relations among
/// `ngens` abstract generators; the result presents the quotient group with
/// the change of basis retained.
pub fn smith_normal_form(relations: &[Vec<BigInt>], ngens: usize) -> SmithPresentation {
    let rows = relations.len().max(1);
    let mut a: Matrix = relations.to_vec();
    if a.is_empty() {
        a.push(vec![BigInt::zero(); ngens]);
    }
    for row in &a {
        assert_eq!(row.len(), ngens, "relation width mismatch");
    }
    let mut s = Snf {
        a,
        v: identity(ngens),
        vinv: identity(ngens),
        rows,
        cols: ngens,
    };
    s.run();
    let mut diagonal = vec![BigInt::zero(); ngens];
    for t in 0..rows.min(ngens) {
        diagonal[t] = s.a[t][t].clone();
    }
    let kept: Vec<usize> = diagonal
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_zero() || d.abs() > BigInt::from(1))
        .map(|(j, _)| j)
        .collect();
    let orders: Vec<BigInt> = kept.iter().map(|&j| diagonal[j].clone()).collect();
    SmithPresentation {
        group: FiniteAbelianGroup::from_orders(&orders),
        diagonal,
        kept,
        v: s.v,
        vinv: s.vinv,
    }
}
