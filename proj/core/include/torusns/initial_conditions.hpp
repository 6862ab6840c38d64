#pragma once

#include "torusns/config.hpp"
#include "torusns/spectral_field.hpp"

namespace torusns {

/// Builds v0 = c0(k) / |k|^alpha for the configured kind.
///
/// random_phi_ball: per site a complex 3-vector with Gaussian components,
///   Leray-projected and normalised, scaled so that |c0(k)| is uniform in
///   [0, delta). Fully determined by rng_seed. With reality_symmetry the
///   half-lattice is drawn and v0(-k) = conj(v0(k)) fills the rest.
/// single_mode: v0(1,0,0) = (0, delta, 0).
/// two_mode: v0(1,0,0) = (0, delta, 0) and v0(0,1,0) = (0, 0, delta).
///   With reality_symmetry the mirrored sites are added.
/// from_checkpoint: loads ic_path, which must be on the configured lattice.
///
/// Every result is divergence-free with phi_norm(v0, alpha) <= delta; the
/// deterministic kinds have phi_norm exactly delta.
SpectralField generate_ic(const RunConfig& config, const LatticePtr& lattice);
SpectralField generate_ic(const RunConfig& config);

}  // namespace torusns
