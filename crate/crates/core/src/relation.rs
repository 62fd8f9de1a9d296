//! Linear relations `R: V ⇝ W` stored as subspaces of `V × W`.

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    dim_v: usize,
    dim_w: usize,
    graph: Subspace,
}

/// The four subspaces attached to a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts {
    pub dom: Subspace,
    pub img: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitSpaces {
    pub k_minus: Subspace,
    pub k_plus: Subspace,
    pub d_minus: Subspace,
    pub d_plus: Subspace,
    pub d: Subspace,
    /// First power at which kernels, domains, images and multivalued parts
    /// stopped changing.
    pub stable_at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPart {
    pub dim_reg: usize,
    /// Columns are representatives in `V` of a basis of `V_reg`.
    pub section: Matrix,
    pub automorphism: Matrix,
}

impl Relation {
    pub fn new(dim_v: usize, dim_w: usize, graph: Subspace) -> Result<Relation> {
        if graph.ambient() != dim_v + dim_w {
            return Err(Error::Dimension(format!(
                "graph lives in dimension {} but V × W has dimension {}",
                graph.ambient(),
                dim_v + dim_w
            )));
        }
        Ok(Relation { dim_v, dim_w, graph })
    }

    /// The graph `{(v, Av)}` of a map `A: V → W`.
    pub fn graph_of(a: &Matrix) -> Relation {
        let f = a.field();
        let gens = Matrix::identity(f, a.cols()).vstack(a);
        Relation { dim_v: a.cols(), dim_w: a.rows(), graph: Subspace::span(&gens) }
    }

    /// `{(v, w) : αv = βw}` for `α: V → U`, `β: W → U`.
    pub fn from_pair(alpha: &Matrix, beta: &Matrix) -> Result<Relation> {
        if alpha.rows() != beta.rows() {
            return Err(Error::Dimension("α and β must share their target".into()));
        }
        if alpha.field() != beta.field() {
            return Err(Error::FieldMismatch(alpha.field(), beta.field()));
        }
        let k = alpha.hstack(&-beta).kernel();
        Ok(Relation { dim_v: alpha.cols(), dim_w: beta.cols(), graph: Subspace::span(&k) })
    }

    pub fn identity(field: Field, n: usize) -> Relation {
        Relation::graph_of(&Matrix::identity(field, n))
    }

    /// The relation whose graph is `{0}`.
    pub fn zero(field: Field, dim_v: usize, dim_w: usize) -> Relation {
        Relation { dim_v, dim_w, graph: Subspace::zero(field, dim_v + dim_w) }
    }

    pub fn full(field: Field, dim_v: usize, dim_w: usize) -> Relation {
        Relation { dim_v, dim_w, graph: Subspace::full(field, dim_v + dim_w) }
    }

    pub fn field(&self) -> Field {
        self.graph.field()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn is_square(&self) -> bool {
        self.dim_v == self.dim_w
    }

    /// The composite `S R: V ⇝ U` for `R: V ⇝ W` and `S: W ⇝ U`.
    pub fn compose(s: &Relation, r: &Relation) -> Result<Relation> {
        if r.dim_w != s.dim_v {
            return Err(Error::Dimension(format!(
                "cannot compose through {} and {} dimensional middles",
                r.dim_w, s.dim_v
            )));
        }
        if r.field() != s.field() {
            return Err(Error::FieldMismatch(r.field(), s.field()));
        }
        let (rb, sb) = (r.graph.basis(), s.graph.basis());
        let (k1, k2) = (rb.cols(), sb.cols());
        let rv = rb.submatrix(0..r.dim_v, 0..k1);
        let rw = rb.submatrix(r.dim_v..r.dim_v + r.dim_w, 0..k1);
        let sw = sb.submatrix(0..s.dim_v, 0..k2);
        let su = sb.submatrix(s.dim_v..s.dim_v + s.dim_w, 0..k2);
        let k = rw.hstack(&-&sw).kernel();
        let x = k.submatrix(0..k1, 0..k.cols());
        let y = k.submatrix(k1..k1 + k2, 0..k.cols());
        let gens = (&rv * &x).vstack(&(&su * &y));
        Ok(Relation { dim_v: r.dim_v, dim_w: s.dim_w, graph: Subspace::span(&gens) })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Relation) -> Result<Relation> {
        Relation::compose(next, self)
    }

    pub fn dagger(&self) -> Relation {
        let b = self.graph.basis();
        let v = b.submatrix(0..self.dim_v, 0..b.cols());
        let w = b.submatrix(self.dim_v..self.dim_v + self.dim_w, 0..b.cols());
        Relation { dim_v: self.dim_w, dim_w: self.dim_v, graph: Subspace::span(&w.vstack(&v)) }
    }

    pub fn parts(&self) -> Parts {
        let dom = self.graph.project(0..self.dim_v);
        let img = self.graph.project(self.dim_v..self.dim_v + self.dim_w);
        let ker = self.graph.slice_first(self.dim_v);
        let mul = self.dagger().graph.slice_first(self.dim_w);
        Parts { dom, img, ker, mul }
    }

    pub fn is_isomorphism(&self) -> bool {
        let p = self.parts();
        p.dom.dim() == self.dim_v && p.img.dim() == self.dim_w && p.ker.dim() == 0 && p.mul.dim() == 0
    }

    pub fn direct_sum(&self, other: &Relation) -> Relation {
        let f = self.field();
        let (a, b) = (self.graph.basis(), other.graph.basis());
        let (av, aw) = (a.submatrix(0..self.dim_v, 0..a.cols()), a.submatrix(self.dim_v..self.dim_v + self.dim_w, 0..a.cols()));
        let (bv, bw) = (
            b.submatrix(0..other.dim_v, 0..b.cols()),
            b.submatrix(other.dim_v..other.dim_v + other.dim_w, 0..b.cols()),
        );
        let gens = Matrix::block_diag(f, &[av, bv]).vstack(&Matrix::block_diag(f, &[aw, bw]));
        Relation { dim_v: self.dim_v + other.dim_v, dim_w: self.dim_w + other.dim_w, graph: Subspace::span(&gens) }
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("relation {} ⇝ {} is not square", self.dim_v, self.dim_w)));
        }
        Ok(())
    }

    pub fn power(&self, k: usize) -> Result<Relation> {
        self.require_square()?;
        let mut acc = Relation::identity(self.field(), self.dim_v);
        for _ in 0..k {
            acc = Relation::compose(self, &acc)?;
        }
        Ok(acc)
    }

    /// `K±`, `D±` and `D = D₋ ∩ D₊`, from the stabilized kernels, domains,
    /// multivalued parts and images of the powers `R^k`.
    pub fn limit_spaces(&self) -> Result<LimitSpaces> {
        self.require_square()?;
        let n = self.dim_v;
        let mut pw = self.clone();
        let mut prev = pw.parts();
        let mut stable_at = 1;
        for k in 2..=n + 2 {
            pw = Relation::compose(self, &pw)?;
            let cur = pw.parts();
            if cur == prev {
                break;
            }
            stable_at = k;
            prev = cur;
        }
        if stable_at > n.max(1) {
            return Err(Error::Internal(format!("relation powers did not stabilize within {n} steps")));
        }
        let d = prev.img.intersection(&prev.dom);
        Ok(LimitSpaces {
            k_minus: prev.mul,
            k_plus: prev.ker,
            d_minus: prev.img,
            d_plus: prev.dom,
            d,
            stable_at,
        })
    }

    /// The automorphism induced on `D / ((K₋ + K₊) ∩ D)`.
    pub fn regular_part(&self) -> Result<RegularPart> {
        let f = self.field();
        let n = self.dim_v;
        let lim = self.limit_spaces()?;
        let nul = lim.k_minus.sum(&lim.k_plus).intersection(&lim.d);
        // section: complete a basis of nul to one of d, in elimination order
        let mut chosen = nul.basis().clone();
        let mut section_cols = Vec::new();
        for col in lim.d.basis().columns() {
            let trial = chosen.hstack(&Matrix::from_columns(f, n, &[col.clone()]));
            if trial.rank() > chosen.cols() {
                chosen = trial;
                section_cols.push(col);
            }
        }
        let section = Matrix::from_columns(f, n, &section_cols);
        let dim_reg = section.cols();
        // R ∩ (D × D)
        let dd = Matrix::block_diag(f, &[lim.d.basis().clone(), lim.d.basis().clone()]);
        let rd = self.graph.intersection(&Subspace::span(&dd));
        let rb = rd.basis();
        let rdv = rb.submatrix(0..n, 0..rb.cols());
        let rdw = rb.submatrix(n..2 * n, 0..rb.cols());
        let lhs = rdv.hstack(nul.basis());
        let sn = section.hstack(nul.basis());
        let mut auto = Matrix::zeros(f, dim_reg, dim_reg);
        for (i, s) in section_cols.iter().enumerate() {
            let sol = lhs
                .solve(s)
                .ok_or_else(|| Error::Internal("section vector has no related representative in D".into()))?;
            let t = rdw.apply(&sol[..rb.cols()]);
            let coords = sn
                .solve(&t)
                .ok_or_else(|| Error::Internal("image of the section leaves D".into()))?;
            for j in 0..dim_reg {
                auto.set(j, i, coords[j].clone());
            }
        }
        if !auto.is_invertible() {
            return Err(Error::Internal("regular part is not invertible".into()));
        }
        Ok(RegularPart { dim_reg, section, automorphism: auto })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{canonical_form, CanonicalBlock};

    #[test]
    fn identity_is_neutral() {
        let f = Field::Prime(5);
        let r = Relation::from_pair(&Matrix::from_int_rows(f, &[&[1, 2]]), &Matrix::from_int_rows(f, &[&[3]])).unwrap();
        assert_eq!(Relation::compose(&Relation::identity(f, 1), &r).unwrap(), r);
        assert_eq!(Relation::compose(&r, &Relation::identity(f, 2)).unwrap(), r);
    }

    #[test]
    fn graphs_compose_as_maps() {
        let q = Field::Rational;
        let a = Matrix::from_int_rows(q, &[&[1, 2], &[0, 1], &[3, 0]]);
        let b = Matrix::from_int_rows(q, &[&[1, 0, 1]]);
        let ba = Relation::compose(&Relation::graph_of(&b), &Relation::graph_of(&a)).unwrap();
        assert_eq!(ba, Relation::graph_of(&(&b * &a)));
    }

    #[test]
    fn relation_through_a_killed_vertex() {
        // α = [1 0], β = [0]: {(v, w) : v₁ = 0}, so R = span{e₂} × κ
        let f = Field::Prime(5);
        let r = Relation::from_pair(&Matrix::from_int_rows(f, &[&[1, 0]]), &Matrix::from_int_rows(f, &[&[0]])).unwrap();
        assert_eq!(r.dim(), 2);
        let p = r.parts();
        assert_eq!((p.dom.dim(), p.img.dim(), p.ker.dim(), p.mul.dim()), (1, 1, 1, 1));
    }

    #[test]
    fn dagger_of_a_scalar() {
        let f = Field::Prime(5);
        let r = Relation::graph_of(&Matrix::from_int_rows(f, &[&[2]]));
        // converse of w = 2v is v = 3w
        assert_eq!(r.dagger(), Relation::graph_of(&Matrix::from_int_rows(f, &[&[3]])));
        assert_eq!(r.dagger().dagger(), r);
    }

    #[test]
    fn parts_of_extremes() {
        let f = Field::Rational;
        let p = Relation::zero(f, 2, 3).parts();
        assert_eq!((p.dom.dim(), p.img.dim(), p.ker.dim(), p.mul.dim()), (0, 0, 0, 0));
        let p = Relation::full(f, 2, 3).parts();
        assert_eq!((p.dom.dim(), p.img.dim(), p.ker.dim(), p.mul.dim()), (2, 3, 2, 3));
        let p = Relation::graph_of(&Matrix::from_int_rows(f, &[&[1, 1], &[0, 1]])).parts();
        assert_eq!((p.dom.dim(), p.img.dim(), p.ker.dim(), p.mul.dim()), (2, 2, 0, 0));
    }

    #[test]
    fn projector_kernel_stabilizes_immediately() {
        let f = Field::Prime(5);
        let r = Relation::graph_of(&Matrix::from_int_rows(f, &[&[1, 0], &[0, 0]]));
        let l = r.limit_spaces().unwrap();
        assert_eq!(l.k_plus, Subspace::span_vectors(f, 2, &[vec![f.zero(), f.one()]]));
        assert_eq!(l.stable_at, 1);
    }

    #[test]
    fn invertible_graph_is_its_own_regular_part() {
        let f = Field::Prime(7);
        let a = Matrix::from_int_rows(f, &[&[2, 1], &[1, 1]]);
        let r = Relation::graph_of(&a);
        let l = r.limit_spaces().unwrap();
        assert_eq!((l.k_minus.dim(), l.k_plus.dim(), l.d.dim()), (0, 0, 2));
        let reg = r.regular_part().unwrap();
        assert_eq!(canonical_form(&reg.automorphism).unwrap(), canonical_form(&a).unwrap());
    }

    #[test]
    fn regular_part_peels_interval_summand() {
        let f = Field::Rational;
        let t = Matrix::from_int_rows(f, &[&[3, 1], &[0, 3]]);
        let interval = Relation::from_pair(&Matrix::from_int_rows(f, &[&[1]]), &Matrix::from_int_rows(f, &[&[0]])).unwrap();
        let r = Relation::graph_of(&t).direct_sum(&interval);
        let reg = r.regular_part().unwrap();
        assert_eq!(reg.dim_reg, 2);
        assert_eq!(canonical_form(&reg.automorphism).unwrap().blocks, vec![CanonicalBlock::jordan(&f.from_i64(3), 2)]);
        assert_eq!(Relation::zero(f, 2, 2).regular_part().unwrap().dim_reg, 0);
    }
}
