pub mod algebra;
pub mod arrival;
pub mod em;
pub mod evolve;
pub mod pauli;

use timeop::lattice::{gaussian_packet, SpinorGrid};

use crate::config::{ConfigError, GridSection, ModelSection, PacketSection};

pub(crate) fn build_packet(
    grid: &GridSection,
    model: &ModelSection,
    packet: &PacketSection,
) -> Result<SpinorGrid, ConfigError> {
    gaussian_packet(
        grid.build()?,
        model.build()?,
        packet.x0,
        packet.p0,
        packet.sigma_p,
        packet.projection.into(),
    )
    .map_err(|e| ConfigError::Invalid(e.to_string()))
}
