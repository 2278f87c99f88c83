#pragma once

#include <ostream>
#include <vector>

#include "tpflow/amplituhedron.hpp"
#include "tpflow/cyclic.hpp"
#include "tpflow/unipotent.hpp"

namespace tpflow {

/// CSV rows (t, chart coordinates, Frobenius norm, min normalized Plücker)
/// along the chart flow starting at a0.
void trajectory_gr(const TauEigensystem& es, const Matrix<double>& a0,
                   const std::vector<double>& ts, std::ostream& out);

/// CSV rows (t, b-coordinates, b-norm, min minor) along a(t) . x0; t > 0.
void trajectory_u(const UnipotentMatrix<double>& x0, double c,
                  const std::vector<double>& ts, std::ostream& out);

/// CSV rows (t, entries of A', Frobenius norm, min Plücker of [Id | A']).
void trajectory_amp(const AmplituhedronSpec& spec, const Matrix<double>& a0,
                    const std::vector<double>& ts, std::ostream& out);

std::vector<double> parse_t_grid(const std::string& grid);  // "0,0.5,1" or "a:b:step"

}  // namespace tpflow
