#pragma once

#include "snls/density.hpp"
#include "snls/field.hpp"
#include "snls/measure.hpp"

namespace snls {

/// M = integral |f|^2 (trapezoid, spectrally exact on the box).
double mass(const WaveField& f);

/// integral |f|^4 V dx on the grid.
double quartic_density_integral(const WaveField& f, const GriddedDensity& v);

/// integral |f|^4 dmu: sum_j m_j |f(y_j)|^4 with band-limited interpolation
/// at the atoms, plus grid quadrature of any density part. Atoms must lie in
/// the periodic box; an atom at x = L is its own periodic image at -L.
double quartic_measure_integral(const WaveField& f, const Measure& mu);

/// E = 1/2 integral |f'|^2 + 1/2 integral |f|^4 V dx.
double energy(const WaveField& f, const GriddedDensity& v);
/// E = 1/2 integral |f'|^2 + 1/2 integral |f|^4 dmu.
double energy(const WaveField& f, const Measure& mu);

}  // namespace snls
