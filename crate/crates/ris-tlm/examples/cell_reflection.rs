use num_complex::Complex64;
use ris_tlm::{reflection_coefficient, IncidentWave, Polarization,
              UnitCellDesign, VaractorModel};

fn main() -> Result<(), ris_tlm::Error> {
    let cell = UnitCellDesign::new(
        5e-3, 5e-3,                  // lattice periods, m
        0.5e-3, 0.5e-3,              // gaps, m
        1.2e-3,                      // slab thickness, m
        Complex64::new(4.4, -0.088), // relative permittivity
        5.87e7,                      // patch conductivity, S/m
    )?;
    let varactor = VaractorModel::with_default_parasitics(0.1e-12, 0.5e-12)?;
    let wave = IncidentWave::new(8e9, 0.0, Polarization::TE)?;
    let gamma = reflection_coefficient(&cell, &varactor, 0.3e-12, &wave)?.gamma;
    println!("|Γ| = {:.3}, ∠Γ = {:.1}°", gamma.norm(), gamma.arg().to_degrees());
    Ok(())
}
