use nalgebra::DVector;
use num_complex::Complex64;

use crate::braid::{BraidWord, Closure};
use crate::error::{Error, Result};
use crate::fib::{FibConstants, Fibonacci};
use crate::recoupling::RecouplingContext;
use crate::rep::BraidRep;

/// Internal labels of the plat vacuum: every cap fuses to `0`, so the
/// left-associated tree reads `(0, c, 0, c, …, c)`.
pub fn plat_vacuum(n: usize, color: u32) -> Vec<u32> {
    (2..n).map(|k| if k % 2 == 0 { 0 } else { color }).collect()
}

/// `B(0,…,0)`: the vacuum-to-vacuum amplitude of `b` in `rep`.
pub fn vacuum_amplitude(rep: &BraidRep, b: &BraidWord) -> Result<Complex64> {
    b.check_closure(Closure::Plat)?;
    let vac = plat_vacuum(rep.strands(), rep.color());
    let k = rep
        .state_index(&vac)
        .ok_or_else(|| Error::Domain("the plat vacuum is not a basis state".into()))?;
    let mut v = DVector::from_element(rep.dim(), Complex64::new(0.0, 0.0));
    v[k] = Complex64::new(1.0, 0.0);
    // the bracket crossing convention is the mirror of the recoupling phases
    let w = rep.apply(&b.mirror(), &v)?;
    Ok(w[k])
}

/// `⟨PB⟩_a = B(0,…,0) Δ_a^{n/2}` with the representation built from `ctx`.
pub fn colored_bracket_plat(b: &BraidWord, color: u32, ctx: &RecouplingContext) -> Result<Complex64> {
    b.check_closure(Closure::Plat)?;
    if color > ctx.max_label() {
        return Err(Error::Domain(format!("color {color} exceeds r − 2 = {}", ctx.max_label())));
    }
    let rep = BraidRep::build(ctx, b.strands() as usize, color)?;
    let amp = vacuum_amplitude(&rep, b)?;
    Ok(amp * ctx.delta_n(color).powi(b.strands() as i32 / 2))
}

/// Color-2 plat bracket from the Fibonacci model at `A = e^{3πi/5}`.
pub fn colored_bracket_plat_fib(b: &BraidWord) -> Result<Complex64> {
    b.check_closure(Closure::Plat)?;
    let rep = BraidRep::build(&Fibonacci, b.strands() as usize, 1)?;
    let amp = vacuum_amplitude(&rep, b)?;
    Ok(amp * FibConstants::new().big_delta.powi(b.strands() as i32 / 2))
}

/// `WRT(L) = Σ_{a=0}^{r−2} Δ_a ⟨L⟩_a`, unnormalized.
pub fn wrt_invariant(b: &BraidWord, ctx: &RecouplingContext) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 0..=ctx.max_label() {
        sum += colored_bracket_plat(b, a, ctx)? * ctx.delta_n(a);
    }
    Ok(sum)
}
