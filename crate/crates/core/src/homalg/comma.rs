use crate::error::Result;
use crate::field::Field;
use crate::fincat::{comma_category, comma_transport, CatFunctor, Comma, CommaSide};
use crate::homalg::cohomology::{cat_cohomology, cat_homology, coefficient_map, Graded, MapDirection};
use crate::linalg::Matrix;
use crate::modcat::{CatModule, Variance};

/// `d ↦ H^q(F/d; Res M)` (over) or `d ↦ H_q(d\F; Res M)` (under) as right
/// modules over the target of `F`, for `q = 0..=q_max`.
#[derive(Clone, Debug)]
pub struct CommaCoefficients<F: Field> {
    pub side: CommaSide,
    pub modules: Vec<CatModule<F>>,
    pub commas: Vec<Comma>,
    /// Per object of the target: (co)homology of its comma category.
    pub values: Vec<Graded<F>>,
}

pub fn comma_coefficient_modules<F: Field>(fun: &CatFunctor, m: &CatModule<F>, q_max: usize, side: CommaSide) -> Result<CommaCoefficients<F>> {
    let m = match m.variance() {
        Variance::Right => m.clone(),
        Variance::Left => {
            return Err(crate::error::Error::VarianceMismatch("comma coefficients take a right module".into()));
        }
    };
    if **fun.source() != **m.category() {
        return Err(crate::error::Error::MismatchedBase("module does not live over the functor's source".into()));
    }
    let t = fun.target();
    let f = m.field().clone();
    let commas = (0..t.num_objects()).map(|d| comma_category(fun, d, side)).collect::<Result<Vec<_>>>()?;
    let values = commas
        .iter()
        .map(|comma| {
            let res = m.restrict(&comma.projection)?;
            match side {
                CommaSide::Over => cat_cohomology(&res, q_max),
                CommaSide::Under => cat_homology(&res, q_max),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    // per morphism φ: d → d', per degree: value(d') → value(d)
    let mut per_morphism: Vec<Vec<Matrix<F::Elem>>> = Vec::with_capacity(t.num_morphisms());
    for phi in 0..t.num_morphisms() {
        let (d, d1) = (t.src(phi), t.tgt(phi));
        let mats = match side {
            CommaSide::Over => {
                let g = comma_transport(&commas[d], &commas[d1], fun, phi)?;
                let theta = identity_theta(&f, &m, &commas[d]);
                coefficient_map(&g, &values[d1], &values[d], &theta, MapDirection::Cohomology)?
            }
            CommaSide::Under => {
                let g = comma_transport(&commas[d1], &commas[d], fun, phi)?;
                let theta = identity_theta(&f, &m, &commas[d1]);
                coefficient_map(&g, &values[d1], &values[d], &theta, MapDirection::Homology)?
            }
        };
        per_morphism.push(mats);
    }
    let modules = (0..=q_max)
        .map(|q| {
            let dims = values.iter().map(|v| v.dims[q]).collect();
            let maps = per_morphism.iter().map(|mats| mats[q].clone()).collect();
            CatModule::new(t.clone(), Variance::Right, f.clone(), dims, maps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CommaCoefficients { side, modules, commas, values })
}

fn identity_theta<F: Field>(f: &F, m: &CatModule<F>, comma: &Comma) -> Vec<Matrix<F::Elem>> {
    comma.pairs.iter().map(|&(c, _)| Matrix::identity(f, m.dim(c))).collect()
}

/// The single module for degree `q`.
pub fn comma_coefficient_module<F: Field>(fun: &CatFunctor, m: &CatModule<F>, q: usize, side: CommaSide) -> Result<CatModule<F>> {
    crate::homalg::cochains::check_degree(q)?;
    Ok(comma_coefficient_modules(fun, m, q, side)?.modules.pop().expect("at least degree zero"))
}
