//! Tate cohomology of a finite cyclic group acting on a finitely generated
//! abelian group.
//!
//! For a generator sigma of order m acting on M, the two computations exposed
//! are H^0 = M^G / N M (fixed points modulo norms, N = 1 + sigma + ... +
//! sigma^{m-1}) and H^{-1} = ker N / (sigma - 1) M. Periodicity of cyclic
//! cohomology makes H^1 equal to H^{-1}, which is how the odd groups are
//! served.

use num_rational::BigRational;

use crate::abelian::{compose, subgroup_quotient, FgGroup, GroupMap};
use crate::error::{Error, Result};

/// A finitely generated abelian group with an automorphism of finite order:
/// the module side of a cyclic group action.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    module: FgGroup,
    sigma: GroupMap,
    order: u32,
}

impl CyclicModule {
    /// Verifies that `sigma` is an endomorphism of `module` with
    /// `sigma^order = id` (which also forces it to be an automorphism).
    pub fn new(module: FgGroup, sigma: GroupMap, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::validation("the action order must be at least 1"));
        }
        if sigma.domain() != &module || sigma.codomain() != &module {
            return Err(Error::validation(
                "sigma must be an endomorphism of the module",
            ));
        }
        let mut power = GroupMap::identity(&module);
        for _ in 0..order {
            power = compose(&power, &sigma)?;
        }
        if !power.is_identity() {
            return Err(Error::validation(format!(
                "sigma^{order} is not the identity on {module}"
            )));
        }
        Ok(CyclicModule {
            module,
            sigma,
            order,
        })
    }

    pub fn module(&self) -> &FgGroup {
        &self.module
    }

    pub fn sigma(&self) -> &GroupMap {
        &self.sigma
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The endomorphism `1 + sigma + ... + sigma^{m-1}`. Applied to an
    /// element u it computes the "norm" of u for the action.
    pub fn norm_endomorphism(&self) -> GroupMap {
        let mut acc = GroupMap::identity(&self.module);
        let mut power = GroupMap::identity(&self.module);
        for _ in 1..self.order {
            power = compose(&power, &self.sigma).expect("powers of sigma compose");
            acc = acc.add(&power).expect("sum of endomorphisms");
        }
        acc
    }

    fn sigma_minus_one(&self) -> GroupMap {
        self.sigma
            .sub(&GroupMap::identity(&self.module))
            .expect("sigma - 1 is an endomorphism")
    }

    /// `H^0 = M^G / N M`.
    pub fn tate_h0(&self) -> FgGroup {
        let (_, fixed_incl) = self.sigma_minus_one().kernel();
        let (_, norm_image_incl) = self.norm_endomorphism().image();
        subgroup_quotient(&fixed_incl, &norm_image_incl)
            .expect("norm image lies in the fixed subgroup")
    }

    /// `H^{-1} = ker N / (sigma - 1) M`; equal to `H^1` by periodicity.
    pub fn tate_h_minus1(&self) -> FgGroup {
        let (_, ker_incl) = self.norm_endomorphism().kernel();
        let (_, aug_image_incl) = self.sigma_minus_one().image();
        subgroup_quotient(&ker_incl, &aug_image_incl)
            .expect("(sigma - 1) M lies in the kernel of the norm")
    }
}

/// `|H^0| / |H^{-1}|` as an exact rational; errors if either group is
/// infinite. Classical fact used as a test oracle: this is 1 whenever the
/// module is finite.
pub fn herbrand_quotient(cm: &CyclicModule) -> Result<BigRational> {
    let h0 = cm.tate_h0();
    let hm1 = cm.tate_h_minus1();
    if !h0.is_finite() || !hm1.is_finite() {
        return Err(Error::Check(format!(
            "Herbrand quotient undefined: H^0 = {h0}, H^-1 = {hm1}"
        )));
    }
    Ok(BigRational::new(h0.torsion_order(), hm1.torsion_order()))
}
