//! Dense matrices over a Euclidean ring, Smith normal form, ranks and homology.

use crate::error::{Error, Result};
use crate::ring::{EuclideanRing, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows<R: Ring<Elem = E>>(ring: &R, cols: usize, rows: Vec<Vec<E>>) -> Self {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_columns<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: E) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !ring.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = ring.add(&out.data[idx], &ring.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in application");
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !ring.is_zero(a) && !ring.is_zero(x) {
                        acc = ring.add(&acc, &ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|x| ring.mul(c, x))
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in concatenation");
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row `dst` += c · row `src`
    fn add_row<R: Ring<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, c: &E) {
        for j in 0..self.cols {
            let x = self.get(src, j);
            if !ring.is_zero(x) {
                let v = ring.add(self.get(dst, j), &ring.mul(c, x));
                self.set(dst, j, v);
            }
        }
    }

    /// column `dst` += c · column `src`
    fn add_col<R: Ring<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, c: &E) {
        for i in 0..self.rows {
            let x = self.get(i, src);
            if !ring.is_zero(x) {
                let v = ring.add(self.get(i, dst), &ring.mul(x, c));
                self.set(i, dst, v);
            }
        }
    }

    fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, c: &E) {
        for j in 0..self.cols {
            let v = ring.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    fn scale_col<R: Ring<Elem = E>>(&mut self, ring: &R, j: usize, c: &E) {
        for i in 0..self.rows {
            let v = ring.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }
}

/// `U · M · V = D` with `U`, `V` invertible and `D` diagonal.
#[derive(Clone, Debug)]
pub struct Smith<E> {
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    pub rank: usize,
}

impl<E: Clone> Smith<E> {
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Reducer<'a, R: EuclideanRing> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    u: Matrix<R::Elem>,
    u_inv: Matrix<R::Elem>,
    v: Matrix<R::Elem>,
    v_inv: Matrix<R::Elem>,
}

impl<R: EuclideanRing> Reducer<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        self.a.add_row(r, dst, src, c);
        self.u.add_row(r, dst, src, c);
        self.u_inv.add_col(r, src, dst, &r.neg(c));
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        self.a.add_col(r, dst, src, c);
        self.v.add_col(r, dst, src, c);
        self.v_inv.add_row(r, src, dst, &r.neg(c));
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem) {
        let r = self.ring;
        let inv = r.unit_inverse(unit).expect("scaling by a non-unit");
        self.a.scale_row(r, i, unit);
        self.u.scale_row(r, i, unit);
        self.u_inv.scale_col(r, i, &inv);
    }

    fn min_pivot(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let r = self.ring;
        cells
            .filter(|&(i, j)| !r.is_zero(self.a.get(i, j)))
            .min_by_key(|&(i, j)| r.norm(self.a.get(i, j)))
    }
}

/// Smith normal form by repeated minimal-norm pivoting.
pub fn smith_normal_form<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Smith<R::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut red = Reducer {
        ring,
        a: m.clone(),
        u: Matrix::identity(ring, rows),
        u_inv: Matrix::identity(ring, rows),
        v: Matrix::identity(ring, cols),
        v_inv: Matrix::identity(ring, cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let all = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = red.min_pivot(all) else { break };
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if ring.is_zero(red.a.get(i, t)) {
                    continue;
                }
                let (q, r) = ring.div_rem(red.a.get(i, t), red.a.get(t, t));
                red.add_row(i, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            for j in t + 1..cols {
                if ring.is_zero(red.a.get(t, j)) {
                    continue;
                }
                let (q, r) = ring.div_rem(red.a.get(t, j), red.a.get(t, t));
                red.add_col(j, t, &ring.neg(&q));
                clean &= ring.is_zero(&r);
            }
            if clean {
                let pivot = red.a.get(t, t).clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !ring.divides(&pivot, red.a.get(i, j)));
                match bad {
                    Some((i, _)) => red.add_row(t, i, &ring.one()),
                    None => break,
                }
                continue;
            }
            let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            let (pi, pj) = red.min_pivot(line).expect("pivot line cannot vanish");
            red.swap_rows(t, pi);
            red.swap_cols(t, pj);
        }
        t += 1;
    }
    let rank = t;
    for i in 0..rank {
        let unit = ring.normalizing_unit(red.a.get(i, i));
        if !ring.is_one(&unit) {
            red.scale_row(i, &unit);
        }
    }
    Smith { u: red.u, u_inv: red.u_inv, d: red.a, v: red.v, v_inv: red.v_inv, rank }
}

/// Rank over the fraction field, by Euclidean row echelon reduction.
pub fn rank<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for j in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        loop {
            let pivot = (r..a.rows())
                .filter(|&i| !ring.is_zero(a.get(i, j)))
                .min_by_key(|&i| ring.norm(a.get(i, j)));
            let Some(p) = pivot else { break };
            a.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..a.rows() {
                if ring.is_zero(a.get(i, j)) {
                    continue;
                }
                let (q, rem) = ring.div_rem(a.get(i, j), a.get(r, j));
                a.add_row(ring, i, r, &ring.neg(&q));
                clean &= ring.is_zero(&rem);
            }
            if clean {
                r += 1;
                break;
            }
        }
    }
    r
}

/// Columns spanning the kernel of `m` (a basis of the kernel lattice).
pub fn kernel<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let s = smith_normal_form(ring, m);
    let keep: Vec<usize> = (s.rank..m.cols()).collect();
    let all: Vec<usize> = (0..m.cols()).collect();
    s.v.select(&all, &keep)
}

/// A solution of `m x = b`, if one exists over the ring.
pub fn solve<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let s = smith_normal_form(ring, m);
    let ub = s.u.apply(ring, b);
    let mut y = vec![ring.zero(); m.cols()];
    for (i, x) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ring.div_rem(x, s.d.get(i, i));
            if !ring.is_zero(&r) {
                return None;
            }
            y[i] = q;
        } else if !ring.is_zero(x) {
            return None;
        }
    }
    Some(s.v.apply(ring, &y))
}

/// `ker(d_out) / im(d_in)` with generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct HomologyGroup<E> {
    /// Generators as chain vectors; torsion generators first.
    pub generators: Vec<Vec<E>>,
    /// `Some(d)` for a generator of order `d`, `None` for a free generator.
    pub orders: Vec<Option<E>>,
    d_out: Matrix<E>,
    cycle_coords: Matrix<E>,
}

impl<E: Clone + PartialEq> HomologyGroup<E> {
    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_none()).count()
    }

    pub fn torsion(&self) -> Vec<E> {
        self.orders.iter().flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_cycle<R: Ring<Elem = E>>(&self, ring: &R, c: &[E]) -> bool {
        self.d_out.apply(ring, c).iter().all(|x| ring.is_zero(x))
    }

    /// Coordinates of the class of a cycle; torsion coordinates are reduced.
    pub fn coordinates<R: EuclideanRing<Elem = E>>(&self, ring: &R, c: &[E]) -> Result<Vec<E>> {
        if !self.is_cycle(ring, c) {
            return Err(Error::Internal("coordinates requested for a non-cycle".into()));
        }
        let y = self.cycle_coords.apply(ring, c);
        Ok(y.into_iter().zip(&self.orders).map(|(x, o)| reduce(ring, &x, o.as_ref())).collect())
    }

    /// Whether two coordinate vectors name the same class.
    pub fn same_class<R: EuclideanRing<Elem = E>>(&self, ring: &R, a: &[E], b: &[E]) -> bool {
        a.iter().zip(b).zip(&self.orders).all(|((x, y), o)| {
            let diff = ring.sub(x, y);
            match o {
                Some(d) => ring.divides(d, &diff),
                None => ring.is_zero(&diff),
            }
        })
    }

    /// Chain representing the class with the given coordinates.
    pub fn chain<R: Ring<Elem = E>>(&self, ring: &R, coords: &[E]) -> Vec<E> {
        let mut out = vec![ring.zero(); self.d_out.cols()];
        for (g, c) in self.generators.iter().zip(coords) {
            if ring.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o = ring.add(o, &ring.mul(c, x));
            }
        }
        out
    }

    /// Human-readable module structure such as `Z^2 ⊕ Z/(2)`.
    pub fn describe<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let sym = symbol(ring);
        let mut parts: Vec<String> =
            self.orders.iter().flatten().map(|d| format!("{sym}/({})", ring.render(d))).collect();
        match self.free_rank() {
            0 => {}
            1 => parts.push(sym),
            n => parts.push(format!("{sym}^{n}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

fn reduce<R: EuclideanRing>(ring: &R, x: &R::Elem, order: Option<&R::Elem>) -> R::Elem {
    match order {
        Some(d) => ring.div_rem(x, d).1,
        None => x.clone(),
    }
}

/// Short symbol for a ring in homology descriptions.
pub fn symbol<R: Ring>(ring: &R) -> String {
    let name = ring.name();
    match name.as_str() {
        "integers" => "Z".into(),
        "rationals" => "Q".into(),
        "laurent-q" => "Laurent".into(),
        _ => match name.strip_prefix("fp:") {
            Some(p) => format!("F{p}"),
            None => name.replace("laurent-fp:", "Laurent_F"),
        },
    }
}

/// Homology at the middle of `C_{k+1} --d_in--> C_k --d_out--> C_{k-1}`.
pub fn homology_at<R: EuclideanRing>(
    ring: &R,
    d_in: &Matrix<R::Elem>,
    d_out: &Matrix<R::Elem>,
) -> Result<HomologyGroup<R::Elem>> {
    let n = d_out.cols();
    assert_eq!(d_in.rows(), n, "d_in and d_out do not compose");
    if !d_out.mul(ring, d_in).is_zero(ring) {
        return Err(Error::Invalid("d_out ∘ d_in ≠ 0: not a complex at this degree".into()));
    }
    let so = smith_normal_form(ring, d_out);
    let z: Vec<usize> = (so.rank..n).collect();
    let all_n: Vec<usize> = (0..n).collect();
    let kernel = so.v.select(&all_n, &z);
    let to_kernel = so.v_inv.select(&z, &all_n);
    let w = to_kernel.mul(ring, d_in);
    let sw = smith_normal_form(ring, &w);
    let gens = kernel.mul(ring, &sw.u_inv);
    let coords = sw.u.mul(ring, &to_kernel);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    for i in 0..z.len() {
        let order = (i < sw.rank).then(|| sw.d.get(i, i).clone());
        if order.as_ref().is_some_and(|d| ring.is_unit(d)) {
            continue;
        }
        generators.push(gens.column(i));
        orders.push(order);
        rows.push(i);
    }
    Ok(HomologyGroup {
        generators,
        orders,
        d_out: d_out.clone(),
        cycle_coords: coords.select(&rows, &all_n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Laurent, Rationals};
    use num_bigint::BigInt;

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&Integers, cols, rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect())
    }

    #[test]
    fn smith_of_diag_two_three() {
        let m = zm(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&Integers, &m);
        assert_eq!(s.d, zm(&[&[1, 0], &[0, 6]]));
        assert_eq!(s.u.mul(&Integers, &m).mul(&Integers, &s.v), s.d);
    }

    #[test]
    fn smith_of_zero_matrix() {
        let m = zm(&[&[0, 0, 0], &[0, 0, 0]]);
        let s = smith_normal_form(&Integers, &m);
        assert_eq!(s.rank, 0);
        assert_eq!(s.u, Matrix::identity(&Integers, 2));
        assert_eq!(s.v, Matrix::identity(&Integers, 3));
    }

    #[test]
    fn smith_of_laurent_scalar() {
        let l = Laurent::new(Rationals);
        let m = Matrix::from_rows(&l, 1, vec![vec![l.parse("1 - t").unwrap()]]);
        let s = smith_normal_form(&l, &m);
        assert_eq!(l.render(s.d.get(0, 0)), "-1 + t");
    }

    #[test]
    fn homology_examples() {
        let z = Integers;
        let h = homology_at(&z, &Matrix::zeros(&z, 3, 0), &Matrix::zeros(&z, 0, 3)).unwrap();
        assert_eq!((h.free_rank(), h.torsion().len()), (3, 0));
        let h = homology_at(&z, &zm(&[&[2]]), &Matrix::zeros(&z, 0, 1)).unwrap();
        assert_eq!(h.torsion(), vec![BigInt::from(2)]);
        assert_eq!(h.describe(&z), "Z/(2)");
        let l = Laurent::new(Rationals);
        let d = Matrix::from_rows(&l, 1, vec![vec![l.parse("1 - t").unwrap()]]);
        let h = homology_at(&l, &d, &Matrix::zeros(&l, 0, 1)).unwrap();
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.describe(&l), "Laurent/(-1 + t)");
    }

    #[test]
    fn homology_refuses_non_complex() {
        let z = Integers;
        let err = homology_at(&z, &zm(&[&[1]]), &zm(&[&[1]])).unwrap_err();
        assert!(err.to_string().contains("not a complex"));
    }

    #[test]
    fn coordinates_detect_boundaries() {
        let z = Integers;
        // C_1 = Z --2--> C_0 = Z^2 embedded in the first factor
        let d_in = zm(&[&[2], &[0]]);
        let h = homology_at(&z, &d_in, &Matrix::zeros(&z, 0, 2)).unwrap();
        assert_eq!(h.describe(&z), "Z/(2) ⊕ Z");
        let b = vec![BigInt::from(4), BigInt::from(0)];
        let c = h.coordinates(&z, &b).unwrap();
        assert!(c.iter().all(|x| *x == BigInt::from(0)));
        let g = vec![BigInt::from(3), BigInt::from(5)];
        let c = h.coordinates(&z, &g).unwrap();
        assert!(h.same_class(&z, &h.coordinates(&z, &h.chain(&z, &c)).unwrap(), &c));
    }

    #[test]
    fn solve_finds_integer_preimages() {
        let z = Integers;
        let m = zm(&[&[2, 4], &[6, 8]]);
        let x = solve(&z, &m, &[BigInt::from(2), BigInt::from(2)]).unwrap();
        assert_eq!(m.apply(&z, &x), vec![BigInt::from(2), BigInt::from(2)]);
        assert!(solve(&z, &m, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
