use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exactlin::sparse::{axpy, Reducer, SparseVec};
use crate::exactlin::{Field, Matrix, Scalar};

/// A finite abstract simplicial complex. Vertex labels are arbitrary `usize`
/// values; simplices are stored as increasing label lists, grouped by
/// dimension and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Closes the given simplices under taking faces.
    pub fn new<I>(generators: I) -> Result<SimplicialComplex>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for mut s in generators {
            if s.is_empty() {
                return Err(Error::Input("simplices: empty simplex".into()));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("simplices: repeated vertex in {s:?}")));
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
        for d in (1..by_dim.len()).rev() {
            let faces: Vec<Vec<usize>> = by_dim[d].iter().flat_map(|s| facets_of(s)).collect();
            by_dim[d - 1].extend(faces);
        }
        Ok(SimplicialComplex::from_sorted(by_dim.into_iter().map(|s| s.into_iter().collect()).collect()))
    }

    fn from_sorted(simplices: Vec<Vec<Vec<usize>>>) -> SimplicialComplex {
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { simplices, index }
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex { simplices: Vec::new(), index: Vec::new() }
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn n_vertices(&self) -> usize {
        self.count(0)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().flatten()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let covered: BTreeSet<Vec<usize>> = self.simplices(d + 1).iter().flat_map(|s| facets_of(s)).collect();
            out.extend(self.simplices(d).iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// The subcomplex of simplices all of whose vertices satisfy `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> SimplicialComplex {
        let mut simplices: Vec<Vec<Vec<usize>>> =
            self.simplices.iter().map(|l| l.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect()).collect();
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        SimplicialComplex::from_sorted(simplices)
    }

    /// Columns of `∂_d` as sparse vectors over the `(d−1)`-simplices, with
    /// `∂[v₀…v_d] = Σ (−1)^i [v₀…v̂ᵢ…v_d]`. Empty for `d = 0`.
    pub fn boundary(&self, field: Field, d: usize) -> Vec<SparseVec> {
        if d == 0 {
            return vec![Vec::new(); self.count(0)];
        }
        let one = field.one();
        let minus = -&one;
        self.simplices(d)
            .iter()
            .map(|s| {
                let mut col: SparseVec = facets_of(s)
                    .enumerate()
                    .map(|(i, face)| {
                        let sign = if i % 2 == 0 { one.clone() } else { minus.clone() };
                        (self.index[d - 1][&face], sign)
                    })
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect()
    }

    pub fn boundary_matrix(&self, field: Field, d: usize) -> Matrix {
        let rows = if d == 0 { 0 } else { self.count(d - 1) };
        let mut m = Matrix::zeros(field, rows, self.count(d));
        for (j, col) in self.boundary(field, d).into_iter().enumerate() {
            for (i, v) in col {
                m.set(i, j, v);
            }
        }
        m
    }
}

/// Codimension-one faces, dropping vertex 0, 1, … in turn.
fn facets_of(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = if s.len() > 1 { s.len() } else { 0 };
    (0..n).map(move |i| s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
}

/// `H_r(K; κ)` with a fixed basis of cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub field: Field,
    pub degree: usize,
    /// Number of `r`-simplices.
    pub n_chains: usize,
    reps: Vec<SparseVec>,
    reducer: Reducer,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Representatives as the columns of a dense matrix.
    pub fn cycles(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.n_chains, self.reps.len());
        for (j, z) in self.reps.iter().enumerate() {
            for (i, v) in z {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// Coordinates of the class of the cycle `z` in the representative basis.
    pub fn coordinates(&self, z: &[(usize, Scalar)]) -> Result<Vec<Scalar>> {
        let (res, comb) = self.reducer.reduce(z);
        if !res.is_empty() {
            return Err(Error::Internal("chain is not a cycle of the complex".into()));
        }
        let mut out = vec![self.field.zero(); self.reps.len()];
        for (k, v) in comb {
            out[k] = v;
        }
        Ok(out)
    }
}

/// Cycles of `∂_r` by column reduction, in simplex order.
pub fn cycles(k: &SimplicialComplex, field: Field, r: usize) -> Vec<SparseVec> {
    let one = field.one();
    if r == 0 {
        return (0..k.count(0)).map(|i| vec![(i, one.clone())]).collect();
    }
    let mut red = Reducer::new(field);
    let mut out = Vec::new();
    for (j, col) in k.boundary(field, r).into_iter().enumerate() {
        let (res, comb) = red.reduce(&col);
        let tag = axpy(&-&one, &comb, &[(j, one.clone())]);
        if res.is_empty() {
            out.push(tag);
        } else {
            red.insert(res, tag);
        }
    }
    out
}

pub fn homology(k: &SimplicialComplex, field: Field, r: usize) -> Homology {
    let mut red = Reducer::new(field);
    for col in k.boundary(field, r + 1) {
        red.add(&col, Vec::new());
    }
    let mut reps = Vec::new();
    for z in cycles(k, field, r) {
        let (res, comb) = red.reduce(&z);
        if !res.is_empty() {
            let tag = axpy(&-&field.one(), &comb, &[(reps.len(), field.one())]);
            red.insert(res, tag);
            reps.push(z);
        }
    }
    Homology { field, degree: r, n_chains: k.count(r), reps, reducer: red }
}

/// Matrix of `H_r(K) → H_r(L)` induced by the inclusion `K ⊆ L`.
pub fn induced_map(k: &SimplicialComplex, hk: &Homology, l: &SimplicialComplex, hl: &Homology) -> Result<Matrix> {
    let r = hk.degree;
    let mut m = Matrix::zeros(hk.field, hl.dim(), hk.dim());
    for (j, z) in hk.reps().iter().enumerate() {
        let mut image: SparseVec = z
            .iter()
            .map(|(i, v)| {
                let s = &k.simplices(r)[*i];
                l.index_of(s)
                    .map(|t| (t, v.clone()))
                    .ok_or_else(|| Error::Internal(format!("simplex {s:?} missing from the larger complex")))
            })
            .collect::<Result<_>>()?;
        image.sort_by_key(|e| e.0);
        for (i, c) in hl.coordinates(&image)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}
