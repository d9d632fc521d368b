use super::{CpModule, CpModuleError};
use crate::intlinalg::FgAbGroup;

impl CpModule {
    /// `V^#`: the same group with every group element acting by its inverse.
    pub fn sharp_dual(&self) -> CpModule {
        // τ^{p-1} is τ⁻¹ on the group
        let inverse = self.tau().pow(self.p() as u32 - 1);
        CpModule::from_parts(self.p(), self.group().clone(), inverse)
    }

    /// `V* = Hom(V, Z)` with `(g·f)(v) = f(g⁻¹ v)`; defined for torsion-free `V`.
    pub fn star_dual(&self) -> Result<CpModule, CpModuleError> {
        if !self.group().is_torsion_free() {
            return Err(CpModuleError::ModuleNotTorsionFree(
                self.group().to_string(),
            ));
        }
        let free = self.free_quotient();
        let dual = free.tau().pow(self.p() as u32 - 1).transpose();
        Ok(CpModule::from_parts(
            self.p(),
            FgAbGroup::free(free.ambient_rank()),
            dual,
        ))
    }
}
