#ifndef KRPT_ENGINE_DIFFUSION_HPP
#define KRPT_ENGINE_DIFFUSION_HPP

#include "krpt/core/config.hpp"
#include "krpt/core/rng.hpp"
#include "krpt/engine/particles.hpp"

namespace krpt::engine {

/**
 * @brief Brownian displacement xi sqrt(2 D dt) per coordinate.
 *
 * Positions are wrapped into the domain when the boundary is periodic and
 * mirrored at the walls when it is reflecting.
 *
 * With noise_substeps = r the displacement is the sum of r independent
 * increments of variance 2 D dt / r, drawn in the same order as r steps of
 * size dt / r would draw them (A particles, then B, per sub-step). Runs at
 * different dt but equal seeds then follow the same Brownian paths.
 */
void diffusion_step(ParticleSystem& system, const Config& config, Rng& rng, int noise_substeps = 1);

}  // namespace krpt::engine

#endif  // KRPT_ENGINE_DIFFUSION_HPP
