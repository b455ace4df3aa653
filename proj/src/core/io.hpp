#ifndef ELASTICA_CORE_IO_HPP
#define ELASTICA_CORE_IO_HPP

#include <string>
#include <vector>

#include "path_gradient.hpp"

namespace elastica {

// Curve file: one "x,y" vertex per line, 17 significant digits, '#' comments.
Chain load_curve(const std::string& file);
void save_curve(const Chain& chain, const std::string& file);

// Path manifest: header lines "n", "nt", "a", "b", then per slice either an
// inline "curve <j>" block of n vertices or a "file <relative path>" line.
PathOfChains load_path(const std::string& file);
void save_path(const PathOfChains& path, const std::string& file);

// Gradient dump: header plus per-slice blocks of n rows
// "z_x z_y beta xi m h".
void save_gradient(const GradientField& grad, const std::string& file);
GradientField load_gradient(const std::string& file);

// Two-column energy trace "iter,E" (CSV with header).
void save_energy_trace(const std::vector<std::pair<long, double>>& trace,
                       const std::string& file);

// Landscape CSV: first row "uv,u_0,...", then one row per v value.
void save_landscape_csv(const std::vector<double>& u, const std::vector<double>& v,
                        const std::vector<double>& energies, const std::string& file);

// write-then-rename; target never holds partial content
void atomic_write(const std::string& file, const std::string& content);

std::string format_full(double x);  // shortest round-trip decimal (17 digits)

}  // namespace elastica

#endif
