use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::kernel::{kernel_modules_checked, KernelKind};
use crate::extension::regular::{Orientation, RegularExtension};
use crate::field::Field;
use crate::homalg::{cohomology_dims, comma_bicomplex, ext_dims, spectral_pages, Filtration, SpectralPage, SpectralPages, Window};
use crate::modcat::{CatModule, Variance};

/// The coefficient layouts a regular extension `π: C → D` supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionShape {
    /// Target regular, `M` right over `C`, `N` absent or constant:
    /// `H^p(D; H^q(K; M)) ⇒ H^{p+q}(C; M)`.
    CohomologyTarget,
    /// Target regular, `N` right over `D`, `M` right over `C`:
    /// `Ext^p_D(N, H^q(K; M)) ⇒ Ext^{p+q}_C(Res N, M)`.
    ExtTarget,
    /// Source regular, `N` left over `D`, `M` left over `C`; the previous
    /// shape on the opposite extension.
    ExtSourceLeft,
    /// Source regular, `N` right over `C`, `M` right over `D`:
    /// `Ext^p_D(H_q(K; N), M) ⇒ Ext^{p+q}_C(N, Res M)`.
    ExtSourceHomology,
    /// Source regular, `N` absent, `M` right over `D`:
    /// `Ext^p_D(H_q(K; R), M) ⇒ H^{p+q}(C; Res M)`.
    CohomologySource,
}

impl ExtensionShape {
    pub const ALL: [ExtensionShape; 5] = [
        ExtensionShape::CohomologyTarget,
        ExtensionShape::ExtTarget,
        ExtensionShape::ExtSourceLeft,
        ExtensionShape::ExtSourceHomology,
        ExtensionShape::CohomologySource,
    ];

    pub fn orientation(self) -> Orientation {
        match self {
            ExtensionShape::CohomologyTarget | ExtensionShape::ExtTarget => Orientation::Target,
            _ => Orientation::Source,
        }
    }
}

/// `E_2` table with its abutment and the dimension-count consistency checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub shape: String,
    pub window: Window,
    /// Variance of the coefficient module the kernel (co)homology was taken in.
    pub coefficient_variance: Variance,
    /// `dims[p][q]` for `p ≤ p_max`, `q ≤ q_max`.
    pub dims: Vec<Vec<usize>>,
    /// Through total degree `n_max`.
    pub abutment: Vec<usize>,
    /// `Σ_{p+q=n} dim E_2^{p,q}`
    pub totals: Vec<usize>,
    /// `totals[n] ≥ abutment[n]` per degree.
    pub inequality: Vec<bool>,
    /// Nonzero cells of the rectangle lie in one row or one column.
    pub concentrated: bool,
    pub equality: bool,
    pub lift_independent: Option<bool>,
}

impl E2Report {
    pub(crate) fn new(shape: String, window: Window, variance: Variance, dims: Vec<Vec<usize>>, abutment: Vec<usize>) -> Self {
        let cell = |p: usize, q: usize| dims.get(p).and_then(|c: &Vec<usize>| c.get(q)).copied().unwrap_or(0);
        let totals: Vec<usize> = (0..=window.n_max).map(|n| (0..=n).map(|p| cell(p, n - p)).sum()).collect();
        let inequality = totals.iter().zip(&abutment).map(|(t, a)| t >= a).collect();
        let nonzero: Vec<(usize, usize)> = (0..dims.len()).flat_map(|p| (0..dims[p].len()).map(move |q| (p, q))).filter(|&(p, q)| cell(p, q) > 0).collect();
        let concentrated = nonzero.windows(2).all(|w| w[0].0 == w[1].0) || nonzero.windows(2).all(|w| w[0].1 == w[1].1);
        let equality = totals == abutment;
        E2Report { shape, window, coefficient_variance: variance, dims, abutment, totals, inequality, concentrated, equality, lift_independent: None }
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    /// All inequalities hold, and concentration forces equality.
    pub fn consistent(&self) -> bool {
        self.inequality.iter().all(|&b| b) && (!self.concentrated || self.equality) && self.lift_independent != Some(false)
    }

    /// The triangle `p + q ≤ n_max` as a page; differential ranks are not
    /// known at this level and are left empty.
    pub fn page(&self) -> SpectralPage {
        let n = self.window.n_max;
        let dims = (0..=n).map(|p| (0..=n - p).map(|q| self.dim(p, q)).collect()).collect();
        SpectralPage { r: Some(2), n_max: n, dims, ranks: Vec::new(), stable: Vec::new() }
    }
}

fn over<F: Field>(m: &CatModule<F>, ext: &RegularExtension, source: bool) -> bool {
    let cat = if source { ext.source_category() } else { ext.target_category() };
    **m.category() == **cat
}

/// Every shape the inputs fit, in declaration order.
pub fn matching_shapes<F: Field>(ext: &RegularExtension, n: Option<&CatModule<F>>, m: &CatModule<F>) -> Vec<ExtensionShape> {
    let right = |x: &CatModule<F>| x.variance() == Variance::Right;
    let left = |x: &CatModule<F>| x.variance() == Variance::Left;
    ExtensionShape::ALL
        .into_iter()
        .filter(|&s| ext.is_regular(s.orientation()))
        .filter(|&s| match s {
            ExtensionShape::CohomologyTarget => right(m) && over(m, ext, true) && n.is_none_or(|n| right(n) && over(n, ext, false) && n.is_constant()),
            ExtensionShape::ExtTarget => right(m) && over(m, ext, true) && n.is_some_and(|n| right(n) && over(n, ext, false)),
            ExtensionShape::ExtSourceLeft => left(m) && over(m, ext, true) && n.is_some_and(|n| left(n) && over(n, ext, false)),
            ExtensionShape::ExtSourceHomology => right(m) && over(m, ext, false) && n.is_some_and(|n| right(n) && over(n, ext, true)),
            ExtensionShape::CohomologySource => n.is_none() && right(m) && over(m, ext, false),
        })
        .collect()
}

fn describe<F: Field>(ext: &RegularExtension, n: Option<&CatModule<F>>, m: &CatModule<F>) -> String {
    let place = |x: &CatModule<F>| {
        let side = if over(x, ext, true) {
            "source"
        } else if over(x, ext, false) {
            "quotient"
        } else {
            "neither category"
        };
        format!("{:?} over {side}", x.variance()).to_lowercase()
    };
    format!("target regular {}, source regular {}, N {}, M {}", ext.target.holds, ext.source.holds, n.map_or("absent".to_string(), place), place(m))
}

/// `E_2` page, abutment and consistency report for a regular extension.
/// The shape is detected from orientation, variances and where the modules
/// live; `requested` pins it when several fit (e.g. `π` the identity).
pub fn extension_e2<F: Field>(
    ext: &RegularExtension,
    n: Option<&CatModule<F>>,
    m: &CatModule<F>,
    window: Window,
    requested: Option<ExtensionShape>,
) -> Result<E2Report> {
    window.check()?;
    let shapes = matching_shapes(ext, n, m);
    let shape = match requested {
        Some(s) if shapes.contains(&s) => s,
        Some(s) => return Err(Error::ShapeMismatch(format!("{s:?} does not fit: {}", describe(ext, n, m)))),
        None => *shapes.first().ok_or_else(|| Error::ShapeMismatch(describe(ext, n, m)))?,
    };
    let (n_max, p_max, q_max) = (window.n_max, window.p_max, window.q_max);
    let pi = &ext.projection;
    let f = m.field().clone();
    let src = ext.source_category().clone();
    let tgt = ext.target_category().clone();
    let columns = |mods: &[CatModule<F>], ext_of: &dyn Fn(&CatModule<F>, usize) -> Result<Vec<usize>>| -> Result<Vec<Vec<usize>>> {
        // dims[p][q] from per-q coefficient modules
        let per_q: Vec<Vec<usize>> = (0..=q_max).map(|q| ext_of(&mods[q], p_max)).collect::<Result<_>>()?;
        Ok((0..=p_max).map(|p| (0..=q_max).map(|q| per_q[q][p]).collect()).collect())
    };
    let (dims, abutment, variance, independent) = match shape {
        ExtensionShape::CohomologyTarget => {
            let m = m.rehome(src)?;
            let (a, ind) = kernel_modules_checked(ext, &m, q_max, KernelKind::Cohomology)?;
            let dims = columns(&a, &|a, k| cohomology_dims(a, k))?;
            (dims, cohomology_dims(&m, n_max)?, Variance::Right, ind)
        }
        ExtensionShape::ExtTarget | ExtensionShape::ExtSourceLeft => {
            let variance = m.variance();
            let m = m.rehome(src)?;
            let n = n.expect("shape requires N").rehome(tgt)?;
            let (a, ind) = kernel_modules_checked(ext, &m, q_max, KernelKind::Cohomology)?;
            let dims = columns(&a, &|a, k| ext_dims(&n, a, k))?;
            (dims, ext_dims(&n.restrict(pi)?, &m, n_max)?, variance, ind)
        }
        ExtensionShape::ExtSourceHomology => {
            let n = n.expect("shape requires N").rehome(src)?;
            let m = m.rehome(tgt)?;
            let (b, ind) = kernel_modules_checked(ext, &n, q_max, KernelKind::Homology)?;
            let dims = columns(&b, &|b, k| ext_dims(b, &m, k))?;
            (dims, ext_dims(&n, &m.restrict(pi)?, n_max)?, Variance::Right, ind)
        }
        ExtensionShape::CohomologySource => {
            let m = m.rehome(tgt)?;
            let triv = CatModule::constant(src, f, Variance::Right);
            let (b, ind) = kernel_modules_checked(ext, &triv, q_max, KernelKind::Homology)?;
            let dims = columns(&b, &|b, k| ext_dims(b, &m, k))?;
            (dims, cohomology_dims(&m.restrict(pi)?, n_max)?, Variance::Right, ind)
        }
    };
    let mut report = E2Report::new(format!("{shape:?}"), window, variance, dims, abutment);
    report.lift_independent = Some(independent);
    Ok(report)
}

/// All pages for the target regular shape with constant `N`, from the
/// comma-category bicomplex of `π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullPages {
    pub pages: SpectralPages,
    pub e2: E2Report,
    /// The engine's `E_2` equals the kernel-cohomology `E_2` cell by cell.
    pub e2_agrees: bool,
}

pub fn extension_pages<F: Field>(ext: &RegularExtension, m: &CatModule<F>, r_max: usize, window: Window) -> Result<FullPages> {
    if r_max == 0 {
        return Err(Error::WindowTooSmall("at least one page must be requested".into()));
    }
    ext.require(Orientation::Target)?;
    let e2 = extension_e2(ext, None, m, window, Some(ExtensionShape::CohomologyTarget))?;
    let m = m.rehome(ext.source_category().clone())?;
    let dc = comma_bicomplex(&ext.projection, &m, window)?;
    let mut pages = spectral_pages(&dc, Filtration::Column, r_max.max(2))?;
    let e2_agrees = pages.page(2).is_some_and(|p| *p == SpectralPage { ranks: p.ranks.clone(), stable: p.stable.clone(), ..e2.page() });
    pages.pages.truncate(r_max);
    Ok(FullPages { pages, e2, e2_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::regular::analyze_extension;
    use crate::field::PrimeField;
    use crate::fincat::{CatFunctor, FiniteCategory};
    use std::sync::Arc;

    fn cyclic(n: usize) -> Arc<FiniteCategory> {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Arc::new(FiniteCategory::from_monoid("*", names, &mul, 0).unwrap())
    }

    #[test]
    fn z4_over_z2_has_a_nonzero_differential() {
        let f = PrimeField::new(2).unwrap();
        let pi = CatFunctor::new(cyclic(4), cyclic(2), vec![0], vec![0, 1, 0, 1]).unwrap();
        let ext = analyze_extension(&pi).unwrap();
        let m = CatModule::constant(pi.source().clone(), f, Variance::Right);
        let w = Window::through(4);
        let r = extension_e2(&ext, None, &m, w, None).unwrap();
        assert_eq!(r.shape, "CohomologyTarget");
        assert!(r.dims.iter().flatten().all(|&d| d == 1));
        assert_eq!(r.abutment, vec![1; 5]);
        assert_eq!(r.totals[2], 3);
        assert!(r.consistent() && !r.equality);
        let full = extension_pages(&ext, &m, 3, Window::through(3)).unwrap();
        assert!(full.e2_agrees);
        assert!(full.pages.converges());
        assert!(full.pages.page(2).unwrap().has_nonzero_differential());
    }

    #[test]
    fn identity_extension_needs_a_pinned_shape_only_when_ambiguous() {
        let f = PrimeField::new(3).unwrap();
        let c = Arc::new(FiniteCategory::poset(vec!["a".into(), "b".into()], |x, y| x <= y).unwrap());
        let ext = analyze_extension(&CatFunctor::identity(c.clone())).unwrap();
        let m = CatModule::constant(c, f, Variance::Right);
        let shapes = matching_shapes(&ext, None, &m);
        assert_eq!(shapes, vec![ExtensionShape::CohomologyTarget, ExtensionShape::CohomologySource]);
        let r = extension_e2(&ext, None, &m, Window::through(2), Some(ExtensionShape::CohomologySource)).unwrap();
        assert!(r.concentrated && r.equality);
        let bad = extension_e2(&ext, Some(&m), &m, Window::through(2), Some(ExtensionShape::ExtSourceLeft));
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }
}
