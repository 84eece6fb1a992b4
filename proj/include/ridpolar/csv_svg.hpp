#pragma once

#include <iosfwd>
#include <vector>

#include "ridpolar/phase_transition.hpp"

namespace ridpolar {

/// CSV with header delta,algo,family,min_rate,success_prob.
void write_pt_csv(std::ostream& os, const std::vector<PtRow>& rows);
std::vector<PtRow> read_pt_csv(std::istream& is);

/// Minimal-rate curves, one per (algo, family), on rate-vs-delta axes with
/// the line rate = delta for reference.
void write_pt_svg(std::ostream& os, const std::vector<PtRow>& rows);

}  // namespace ridpolar
