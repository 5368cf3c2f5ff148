//! Boundary-MPS contraction of coset-probability tensor networks for rotated
//! codes.
//!
//! The network is cut into one column MPO per qubit column. MPS sites carry
//! the check variables of the gap between two qubit columns (one site per
//! row, physical dimension 2), so after absorbing column `c` the MPS is the
//! boundary state as a function of the checks in gap `c`.
//!
//! Inside a column, the bond between rows `r` and `r+1` carries the values of
//! the two checks (left gap, right gap) shared by those rows: dimension up to
//! 4 inside the column, 2 between columns. Checks on the left and right code
//! boundaries only touch one column and are summed inside its MPO.

use faer::Mat;

use crate::codes::{rotated_face_kind, CheckKind, Layout, Pauli, PauliOperator, StabilizerCode};
use crate::noise::BiasedNoiseModel;
use crate::{Error, Result};

/// Row-major dense real tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(shape: &[usize]) -> Self {
        DenseTensor {
            shape: shape.to_vec(),
            data: vec![0.0; shape.iter().product()],
        }
    }

    pub fn from_data(shape: &[usize], data: Vec<f64>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if len != data.len() {
            return Err(Error::LengthMismatch {
                expected: len,
                got: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("tensor entries must be finite".into()));
        }
        Ok(DenseTensor {
            shape: shape.to_vec(),
            data,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index rank mismatch");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &d)| {
            assert!(i < d, "index out of range");
            acc * d + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn scale(&mut self, c: f64) {
        for x in &mut self.data {
            *x *= c;
        }
    }

    pub fn reshape(mut self, shape: &[usize]) -> Result<Self> {
        let len: usize = shape.iter().product();
        if len != self.data.len() {
            return Err(Error::LengthMismatch {
                expected: self.data.len(),
                got: len,
            });
        }
        self.shape = shape.to_vec();
        Ok(self)
    }

    /// Row-major `rows × cols` reading of the flat data.
    fn as_matrix(&self, rows: usize, cols: usize) -> Mat<f64> {
        Mat::from_fn(rows, cols, |r, c| self.data[r * cols + c])
    }

    fn from_matrix(m: &Mat<f64>, shape: &[usize]) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                data.push(m[(r, c)]);
            }
        }
        DenseTensor {
            shape: shape.to_vec(),
            data,
        }
    }
}

/// One column of MPO tensors, each shaped `[left, in, out, right]`.
#[derive(Clone, Debug)]
pub struct ColumnMpo {
    pub sites: Vec<DenseTensor>,
}

/// Matrix product state with site tensors shaped `[left, phys, right]` and a
/// separately tracked log of the factored-out norm.
#[derive(Clone, Debug)]
pub struct BoundaryMPS {
    sites: Vec<DenseTensor>,
    log_norm: f64,
    /// Singular values per bond from the last truncation sweep, before
    /// truncation.
    spectra: Vec<Vec<f64>>,
}

impl BoundaryMPS {
    /// Trivial state on `len` sites with all dimensions 1.
    pub fn trivial(len: usize) -> Self {
        BoundaryMPS {
            sites: (0..len)
                .map(|_| DenseTensor::from_data(&[1, 1, 1], vec![1.0]).expect("shape"))
                .collect(),
            log_norm: 0.0,
            spectra: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    pub fn sites(&self) -> &[DenseTensor] {
        &self.sites
    }

    pub fn bond_dims(&self) -> Vec<usize> {
        self.sites[..self.sites.len().saturating_sub(1)]
            .iter()
            .map(|s| s.shape()[2])
            .collect()
    }

    /// Pre-truncation singular values of each bond from the last sweep; empty
    /// if the last step needed no sweep.
    pub fn bond_spectra(&self) -> &[Vec<f64>] {
        &self.spectra
    }

    /// Schmidt values of every bond of the current state, largest first.
    pub fn schmidt_spectra(&self) -> Result<Vec<Vec<f64>>> {
        let mut sites = self.sites.clone();
        canonicalize_left(&mut sites);
        truncate_right(&mut sites, usize::MAX)
    }

    /// `ln` of the scalar represented once every physical dimension is 1.
    /// Nonpositive values (only reachable through truncation) give `-inf`.
    pub fn log_scalar(&self) -> Result<f64> {
        if self.log_norm == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        let mut v = Mat::from_fn(1, 1, |_, _| 1.0);
        for s in &self.sites {
            let [dl, d, dr] = [s.shape()[0], s.shape()[1], s.shape()[2]];
            if d != 1 {
                return Err(Error::InvalidArgument(
                    "MPS still has open physical legs".into(),
                ));
            }
            v = &v * &s.as_matrix(dl, dr);
        }
        let x = v[(0, 0)];
        Ok(if x > 0.0 {
            self.log_norm + x.ln()
        } else {
            f64::NEG_INFINITY
        })
    }
}

/// Largest bond kept without orthogonalization when no truncation is due.
pub const UNCOMPRESSED_BOND_LIMIT: usize = 256;

/// Applies `mpo` to `mps`. If some bond then exceeds `chi`, the state is
/// brought to canonical form with a left-to-right QR sweep and every bond is
/// truncated to at most `chi` singular values in a right-to-left SVD sweep;
/// otherwise the product is kept as is. Bonds above
/// [`UNCOMPRESSED_BOND_LIMIT`] are always swept, losslessly when `chi` is
/// larger than their rank. Either way the scale is factored
/// into the accumulated log-norm.
pub fn apply_and_truncate(mps: &BoundaryMPS, mpo: &ColumnMpo, chi: usize) -> Result<BoundaryMPS> {
    if chi == 0 {
        return Err(Error::InvalidArgument("chi must be at least 1".into()));
    }
    if mps.len() != mpo.sites.len() {
        return Err(Error::LengthMismatch {
            expected: mps.len(),
            got: mpo.sites.len(),
        });
    }
    let mut sites = Vec::with_capacity(mps.len());
    for (m, w) in mps.sites.iter().zip(&mpo.sites) {
        sites.push(apply_site(m, w)?);
    }
    let mut out = BoundaryMPS {
        sites,
        log_norm: mps.log_norm,
        spectra: Vec::new(),
    };
    if out.log_norm == f64::NEG_INFINITY {
        return Ok(out);
    }
    if out
        .bond_dims()
        .iter()
        .all(|&b| b <= chi.min(UNCOMPRESSED_BOND_LIMIT))
    {
        // nothing to discard; stay in nonnegative arithmetic
        for site in &mut out.sites {
            let m = site.data.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            if m == 0.0 {
                out.log_norm = f64::NEG_INFINITY;
                return Ok(out);
            }
            if !m.is_finite() {
                return Err(Error::Numerical("MPS entry is not finite".into()));
            }
            site.scale(1.0 / m);
            out.log_norm += m.ln();
        }
        return Ok(out);
    }
    canonicalize_left(&mut out.sites);
    out.spectra = truncate_right(&mut out.sites, chi)?;
    let norm = out.sites[0].data.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        if !norm.is_finite() {
            return Err(Error::Numerical("MPS norm is not finite".into()));
        }
        out.log_norm = f64::NEG_INFINITY;
    } else {
        out.sites[0].scale(1.0 / norm);
        out.log_norm += norm.ln();
    }
    Ok(out)
}

/// `M'[(a,l), o, (b,r)] = Σ_i M[a,i,b] W[l,i,o,r]`.
fn apply_site(m: &DenseTensor, w: &DenseTensor) -> Result<DenseTensor> {
    let [dl, d, dr] = [m.shape[0], m.shape[1], m.shape[2]];
    let [wl, din, dout, wr] = [w.shape[0], w.shape[1], w.shape[2], w.shape[3]];
    if d != din {
        return Err(Error::InvalidArgument(format!(
            "physical dimension mismatch: MPS {d}, MPO {din}"
        )));
    }
    let mut out = DenseTensor::zeros(&[dl * wl, dout, dr * wr]);
    for a in 0..dl {
        for i in 0..d {
            for b in 0..dr {
                let mv = m.data[(a * d + i) * dr + b];
                if mv == 0.0 {
                    continue;
                }
                for l in 0..wl {
                    for o in 0..dout {
                        for r in 0..wr {
                            let wv = w.data[((l * din + i) * dout + o) * wr + r];
                            if wv != 0.0 {
                                let idx = ((a * wl + l) * dout + o) * (dr * wr) + b * wr + r;
                                out.data[idx] += mv * wv;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn canonicalize_left(sites: &mut [DenseTensor]) {
    for r in 0..sites.len().saturating_sub(1) {
        let [dl, d, dr] = [sites[r].shape[0], sites[r].shape[1], sites[r].shape[2]];
        let qr = sites[r].as_matrix(dl * d, dr).qr();
        let q = qr.compute_thin_Q();
        let rm = qr.thin_R().to_owned();
        let kk = q.ncols();
        sites[r] = DenseTensor::from_matrix(&q, &[dl, d, kk]);
        let next = &sites[r + 1];
        let [_, d2, dr2] = [next.shape[0], next.shape[1], next.shape[2]];
        let merged = &rm * &next.as_matrix(dr, d2 * dr2);
        sites[r + 1] = DenseTensor::from_matrix(&merged, &[kk, d2, dr2]);
    }
}

fn truncate_right(sites: &mut [DenseTensor], chi: usize) -> Result<Vec<Vec<f64>>> {
    let len = sites.len();
    let mut spectra = vec![Vec::new(); len.saturating_sub(1)];
    for r in (1..len).rev() {
        let [dl, d, dr] = [sites[r].shape[0], sites[r].shape[1], sites[r].shape[2]];
        let svd = sites[r]
            .as_matrix(dl, d * dr)
            .thin_svd()
            .map_err(|_| Error::Numerical(format!("SVD did not converge at site {r}")))?;
        let (u, v) = (svd.U(), svd.V());
        let sv = svd.S().column_vector();
        let mut order: Vec<usize> = (0..sv.nrows()).collect();
        order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]).then(a.cmp(&b)));
        spectra[r - 1] = order.iter().map(|&i| sv[i]).collect();
        let kept = &order[..chi.min(order.len())];
        let keep = kept.len();
        // new site r: rows of V^T
        let vt_k = Mat::from_fn(keep, d * dr, |row, col| v[(col, kept[row])]);
        // U S absorbed into site r-1
        let us = Mat::from_fn(dl, keep, |row, col| u[(row, kept[col])] * sv[kept[col]]);
        sites[r] = DenseTensor::from_matrix(&vt_k, &[keep, d, dr]);
        let prev = &sites[r - 1];
        let [pl, pd, _] = [prev.shape[0], prev.shape[1], prev.shape[2]];
        let merged = &prev.as_matrix(pl * pd, dl) * &us;
        sites[r - 1] = DenseTensor::from_matrix(&merged, &[pl, pd, keep]);
    }
    Ok(spectra)
}

/// Contracts a column list left to right with truncation `chi` and returns
/// the log of the result.
pub fn contract(network: &[ColumnMpo], chi: usize) -> Result<f64> {
    let len = network
        .first()
        .map(|c| c.sites.len())
        .ok_or_else(|| Error::InvalidArgument("empty network".into()))?;
    let mut mps = BoundaryMPS::trivial(len);
    for col in network {
        mps = apply_and_truncate(&mps, col, chi)?;
    }
    mps.log_scalar()
}

/// Contraction without truncation.
pub fn contract_exact(network: &[ColumnMpo]) -> Result<f64> {
    contract(network, usize::MAX)
}

/// Which check, if any, sits at face `i` of gap `g`.
fn face(code: &StabilizerCode, i: isize, g: isize) -> Option<CheckKind> {
    rotated_face_kind(code.j(), code.k(), i, g)
}

/// Column MPOs whose full contraction is `π(f G) = Σ_{g ∈ G} π(f g)` for the
/// rotated code.
pub fn build_coset_network(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    f: &PauliOperator,
) -> Result<Vec<ColumnMpo>> {
    if code.layout() != Layout::Rotated {
        return Err(Error::InvalidArgument(
            "coset networks are built for rotated codes".into(),
        ));
    }
    if f.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: f.n(),
        });
    }
    let probs = model.probs();
    let (j, k) = (code.j() as isize, code.k() as isize);
    let interior = |g: isize| (0..=k - 2).contains(&g);
    // face represented by MPS position p of an interior gap g
    let pos_face = |p: isize, g: isize| if g % 2 == 0 { p - 1 } else { p };
    let mut columns = Vec::with_capacity(k as usize);
    for c in 0..k {
        let (gin, gout) = (c - 1, c);
        let exists = |i: isize, g: isize| face(code, i, g).is_some();
        let bond = |r: isize| -> (usize, usize) {
            if r < 0 || r >= j - 1 {
                (1, 1)
            } else {
                (1 + exists(r, gin) as usize, 1 + exists(r, gout) as usize)
            }
        };
        let din = if interior(gin) { 2 } else { 1 };
        let dout = if interior(gout) { 2 } else { 1 };
        let mut sites = Vec::with_capacity(j as usize);
        for r in 0..j {
            let q = code.qubit_at(r, c).expect("rotated qubit");
            let fq = f.get(q);
            let (bl_in, bl_out) = bond(r - 1);
            let (br_in, br_out) = bond(r);
            let (wl, wr) = (bl_in * bl_out, br_in * br_out);
            let mut t = DenseTensor::zeros(&[wl, din, dout, wr]);
            for lb in 0..wl {
                for rb in 0..wr {
                    for li in 0..din {
                        for lo in 0..dout {
                            // face values (gap side, face) around this qubit
                            let mut vals = [[0u8; 2]; 2]; // [side][lo=r-1 / hi=r]
                            if r >= 1 {
                                vals[0][0] = (lb / bl_out) as u8;
                                vals[1][0] = (lb % bl_out) as u8;
                            }
                            if r <= j - 2 {
                                vals[0][1] = (rb / br_out) as u8;
                                vals[1][1] = (rb % br_out) as u8;
                            }
                            let mut ok = true;
                            for (side, g, leg, dim) in [(0, gin, li, din), (1, gout, lo, dout)] {
                                if dim == 1 {
                                    continue;
                                }
                                let fi = pos_face(r, g);
                                let slot = if fi == r - 1 { 0 } else { 1 };
                                if fi == -1 || fi == j - 1 {
                                    vals[side][slot] = leg as u8;
                                } else if vals[side][slot] != leg as u8 {
                                    ok = false;
                                }
                            }
                            if !ok {
                                continue;
                            }
                            let mut p = fq;
                            for (side, g) in [(0usize, gin), (1usize, gout)] {
                                for (slot, fi) in [(0usize, r - 1), (1usize, r)] {
                                    if vals[side][slot] == 1 {
                                        match face(code, fi, g) {
                                            Some(CheckKind::X) => p = p.mul(Pauli::X),
                                            Some(CheckKind::Z) => p = p.mul(Pauli::Z),
                                            None => ok = false,
                                        }
                                    }
                                }
                            }
                            if ok {
                                t.set(&[lb, li, lo, rb], probs[p.index()]);
                            }
                        }
                    }
                }
            }
            sites.push(t);
        }
        columns.push(ColumnMpo { sites });
    }
    Ok(columns)
}

/// `ln π(f G)` by boundary-MPS contraction with bond cap `chi`.
pub fn coset_log_prob(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    f: &PauliOperator,
    chi: usize,
) -> Result<f64> {
    contract(&build_coset_network(code, model, f)?, chi)
}
