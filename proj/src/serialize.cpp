// Copyright 2026 The qnksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qnk/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace qnk::cli {

namespace {

Json complex_json(const Complex& c) {
    return Json::array({c.real(), c.imag()});
}

Json layout_json(const Layout& l) {
    Json regs = Json::array();
    for (const auto& r : l.registers()) {
        regs.push_back({{"name", r.name}, {"qubits", r.qubits}});
    }
    return regs;
}

Json finite_or_null(double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

}  // namespace

std::string state_digest(const QState& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string& text) {
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    feed(s.layout().to_string());
    char buf[64];
    auto feed_complex = [&](const Complex& c) {
        // "+0" keeps negative zero from changing the digest.
        std::snprintf(buf, sizeof buf, "%.12e,%.12e;", c.real() + 0.0, c.imag() + 0.0);
        feed(buf);
    };
    if (s.is_pure()) {
        for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
            feed_complex(s.amplitudes()(i));
        }
    } else {
        const Matrix& rho = s.density();
        for (Eigen::Index i = 0; i < rho.rows(); ++i) {
            for (Eigen::Index j = 0; j < rho.cols(); ++j) {
                feed_complex(rho(i, j));
            }
        }
    }
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json state_to_json(const QState& s, bool full_states) {
    Json j;
    j["layout"] = layout_json(s.layout());
    j["form"] = s.is_pure() ? "pure" : "mixed";
    if (s.qubits() > kMaxInlineQubits && !full_states) {
        j["digest"] = state_digest(s);
        return j;
    }
    if (s.is_pure()) {
        Json amps = Json::array();
        for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
            amps.push_back(complex_json(s.amplitudes()(i)));
        }
        j["amplitudes"] = std::move(amps);
    } else {
        Json rows = Json::array();
        const Matrix& rho = s.density();
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                row.push_back(complex_json(rho(r, c)));
            }
            rows.push_back(std::move(row));
        }
        j["density"] = std::move(rows);
    }
    return j;
}

Json transcript_to_json(const engine::Transcript& t, bool full_states) {
    Json j;
    j["session_id"] = t.session_id;
    j["seed"] = t.seed;
    j["protocol"] = t.protocol;
    j["k"] = t.k;
    j["l"] = t.l;
    Json passes = Json::array();
    for (const auto& p : t.passes) {
        Json e;
        e["pass"] = p.pass;
        e["sender"] = engine::to_string(p.sender);
        e["adversary_action"] = p.adversary_action;
        e["cipher"] = state_to_json(p.cipher, full_states);
        Json checks = Json::array();
        for (const auto& c : p.checks) {
            checks.push_back({{"party", engine::to_string(c.party)},
                              {"registers", c.registers},
                              {"outcome", format_bits(c.outcome)},
                              {"probability", c.probability},
                              {"passed", c.passed}});
        }
        e["checks"] = std::move(checks);
        passes.push_back(std::move(e));
    }
    j["pass_events"] = std::move(passes);
    j["status"] = engine::to_string(t.status);
    j["aborted_at_pass"] = t.aborted_at_pass ? Json(*t.aborted_at_pass) : Json(nullptr);
    j["phase_distance"] = finite_or_null(t.phase_distance);
    if (t.delivered) {
        j["delivered"] = state_to_json(*t.delivered, full_states);
    }
    j["warnings"] = t.warnings;
    return j;
}

Json report_to_json(const attacks::AttackReport& r) {
    Json j;
    j["attack"] = r.attack;
    j["status"] = r.status;
    j["trials"] = r.trials;
    j["success"] = r.success;
    j["failure"] = r.failure;
    j["detected"] = r.detected;
    Json est = Json::object();
    for (const auto& [k, v] : r.estimators) {
        est[k] = finite_or_null(v);
    }
    j["estimators"] = std::move(est);
    Json log = Json::array();
    for (const auto& e : r.log) {
        log.push_back({{"trial", e.trial}, {"outcome", e.outcome}, {"detail", e.detail}});
    }
    j["log"] = std::move(log);
    return j;
}

}  // namespace qnk::cli
