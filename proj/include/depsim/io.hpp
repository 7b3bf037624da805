#pragma once

#include <Eigen/Core>
#include <ostream>
#include <string>

#include "depsim/scheduler.hpp"

namespace depsim {

// Compact, locale-independent float formatting shared by all emitters so that
// repeated runs are byte-identical.
std::string format_double(double v);

// Comma-separated, '.' decimal, LF line endings.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

// One step per line: {"t":..,"state":[..],"action":[..],"reward":..,"tag":".."}
void write_episode_ndjson(std::ostream& os, const EpisodeLog& log);

// Header row: state_0..,action_0..,reward,done,tag
void write_buffer_csv(std::ostream& os, const ReplayBuffer& buffer);

}  // namespace depsim
