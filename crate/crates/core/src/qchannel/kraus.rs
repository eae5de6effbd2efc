use nalgebra::Matrix4;

use super::choi::ChoiMatrix;
use super::state::DensityMatrix;
use super::tmatrix::TMatrix;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, max_abs_diff, r, CMat2};

pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Operators with all entries below this are treated as zero.
const NEGLIGIBLE_OP: f64 = 1e-14;

/// An ordered list of 2×2 Kraus operators. Without a completeness
/// constraint this is a completely positive, possibly trace-decreasing map;
/// the empty list is the zero map.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct KrausSet {
    ops: Vec<CMat2>,
}

/// A completely positive map that need not preserve trace.
pub type CpMap = KrausSet;

impl KrausSet {
    pub fn new(ops: Vec<CMat2>) -> Self {
        Self {
            ops: ops
                .into_iter()
                .filter(|k| max_abs(k) > NEGLIGIBLE_OP)
                .collect(),
        }
    }

    pub fn zero() -> Self {
        Self { ops: Vec::new() }
    }

    pub fn ops(&self) -> &[CMat2] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// True when the map is zero up to `tol` in Choi trace.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.choi().trace() <= tol
    }

    pub fn apply_operator(&self, x: &CMat2) -> CMat2 {
        self.ops.iter().map(|k| k * x * k.adjoint()).sum()
    }

    /// `Σ K† A K`, the Heisenberg-picture action.
    pub fn apply_dual(&self, a: &CMat2) -> CMat2 {
        self.ops.iter().map(|k| k.adjoint() * a * k).sum()
    }

    pub fn choi(&self) -> ChoiMatrix {
        ChoiMatrix::from_kraus(&self.ops)
    }

    /// Pauli-basis affine matrix; row 0 carries the trace behaviour.
    pub fn affine_matrix(&self) -> Matrix4<f64> {
        TMatrix::affine_of(|x| self.apply_operator(x))
    }

    pub fn completeness(&self) -> CMat2 {
        self.ops.iter().map(|k| k.adjoint() * k).sum()
    }

    pub fn completeness_deviation(&self) -> f64 {
        max_abs_diff(&self.completeness(), &CMat2::identity())
    }

    /// Output trace `Tr[Λ(ρ)]`.
    pub fn output_trace(&self, rho: &CMat2) -> f64 {
        self.apply_operator(rho).trace().re
    }

    /// The map multiplied by a nonnegative weight.
    pub fn scaled(&self, w: f64) -> Self {
        assert!(w >= 0.0, "CP maps can only be scaled by nonnegative weights");
        let s = r(w.sqrt());
        Self::new(self.ops.iter().map(|k| k * s).collect())
    }

    /// `self ∘ inner` as the pairwise product Kraus set.
    pub fn after(&self, inner: &KrausSet) -> Self {
        let mut ops = Vec::with_capacity(self.ops.len() * inner.ops.len());
        for a in &self.ops {
            for b in &inner.ops {
                ops.push(a * b);
            }
        }
        Self::new(ops)
    }

    /// The sum of CP maps, realised by concatenating Kraus lists.
    pub fn sum<'a>(maps: impl IntoIterator<Item = &'a KrausSet>) -> Self {
        Self::new(maps.into_iter().flat_map(|m| m.ops.iter().copied()).collect())
    }

    /// Minimal Kraus representation from the Choi eigendecomposition.
    pub fn canonical(&self) -> Self {
        let ops = self
            .choi()
            .to_kraus()
            .expect("Choi matrix built from Kraus operators is PSD");
        Self::new(ops)
    }
}

/// A completely positive trace-preserving qubit map with cached T-matrix and Choi forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    kraus: KrausSet,
    tmatrix: TMatrix,
    choi: ChoiMatrix,
}

impl Channel {
    pub fn from_kraus(ops: Vec<CMat2>) -> Result<Self> {
        Self::from_kraus_set(KrausSet::new(ops))
    }

    pub fn from_kraus_set(kraus: KrausSet) -> Result<Self> {
        let deviation = kraus.completeness_deviation();
        if deviation > COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        let tmatrix = TMatrix::new(kraus.affine_matrix())?;
        let choi = kraus.choi();
        Ok(Self {
            kraus,
            tmatrix,
            choi,
        })
    }

    pub fn from_tmatrix(t: &TMatrix) -> Result<Self> {
        let ops = super::tmatrix::kraus_from_tmatrix(t)?;
        Self::from_kraus(ops)
    }

    pub fn from_choi(choi: &ChoiMatrix) -> Result<Self> {
        Self::from_kraus(choi.to_kraus()?)
    }

    pub fn kraus(&self) -> &KrausSet {
        &self.kraus
    }

    pub fn tmatrix(&self) -> &TMatrix {
        &self.tmatrix
    }

    pub fn choi(&self) -> &ChoiMatrix {
        &self.choi
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let m = rho.as_qubit()?;
        Ok(DensityMatrix::qubit_unchecked(self.kraus.apply_operator(m)))
    }

    pub fn apply_operator(&self, x: &CMat2) -> CMat2 {
        self.kraus.apply_operator(x)
    }

    /// `outer ∘ inner`, keeping the pairwise product Kraus set.
    pub fn compose(outer: &Channel, inner: &Channel) -> Channel {
        let kraus = outer.kraus.after(&inner.kraus);
        Channel {
            choi: kraus.choi(),
            tmatrix: outer.tmatrix.compose(&inner.tmatrix),
            kraus,
        }
    }

    pub fn dual(&self) -> DualMap {
        DualMap {
            kraus: self.kraus.clone(),
        }
    }

    /// Convex mixture `w·a + (1−w)·b`.
    pub fn mix(a: &Channel, w: f64, b: &Channel) -> Result<Channel> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidParameter(format!("mixing weight {w}")));
        }
        Channel::from_kraus_set(KrausSet::sum([&a.kraus.scaled(w), &b.kraus.scaled(1.0 - w)]))
    }

    /// Same channel with a minimal Kraus list.
    pub fn canonical(&self) -> Channel {
        Channel {
            kraus: self.kraus.canonical(),
            tmatrix: self.tmatrix,
            choi: self.choi.clone(),
        }
    }
}

/// Heisenberg-picture dual `Λ*(A) = Σ K† A K`; completely positive and unital.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMap {
    kraus: KrausSet,
}

impl DualMap {
    pub fn apply(&self, a: &CMat2) -> CMat2 {
        self.kraus.apply_dual(a)
    }

    pub fn unitality_deviation(&self) -> f64 {
        max_abs_diff(&self.apply(&CMat2::identity()), &CMat2::identity())
    }
}
