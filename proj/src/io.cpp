#include "depsim/io.hpp"

#include <cstdio>

namespace depsim {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_double(m(i, j));
        }
        os << '\n';
    }
}

namespace {

void write_vector_json(std::ostream& os, const Eigen::VectorXd& v) {
    os << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << format_double(v[i]);
    }
    os << ']';
}

}  // namespace

void write_episode_ndjson(std::ostream& os, const EpisodeLog& log) {
    for (const auto& s : log.steps) {
        os << "{\"t\":" << s.t << ",\"state\":";
        write_vector_json(os, s.observation);
        os << ",\"action\":";
        write_vector_json(os, s.action);
        os << ",\"reward\":" << format_double(s.reward) << ",\"tag\":\"" << to_string(s.tag)
           << "\"}\n";
    }
}

void write_buffer_csv(std::ostream& os, const ReplayBuffer& buffer) {
    if (buffer.size() == 0) return;
    const auto& first = buffer.at(0);
    for (Eigen::Index i = 0; i < first.state.size(); ++i) os << "state_" << i << ',';
    for (Eigen::Index i = 0; i < first.action.size(); ++i) os << "action_" << i << ',';
    os << "reward,done,tag\n";
    for (size_t k = 0; k < buffer.size(); ++k) {
        const auto& t = buffer.at(k);
        for (Eigen::Index i = 0; i < t.state.size(); ++i) os << format_double(t.state[i]) << ',';
        for (Eigen::Index i = 0; i < t.action.size(); ++i) os << format_double(t.action[i]) << ',';
        os << format_double(t.reward) << ',' << (t.done ? 1 : 0) << ',' << to_string(t.tag)
           << '\n';
    }
}

}  // namespace depsim
