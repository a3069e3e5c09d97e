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


#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qnk/algebra.hpp"
#include "qnk/attacks.hpp"
#include "qnk/cli.hpp"
#include "qnk/engine.hpp"
#include "qnk/pqc.hpp"
#include "qnk/protocols.hpp"

namespace {

using namespace qnk;
constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double inf_norm(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

Verdict ac1() {
    Rng rng(101);
    double worst = 0;
    int states = 0;
    for (const auto& name : pqc::PqcScheme::names()) {
        for (std::size_t n = 1; n <= 3; ++n) {
            const pqc::PqcScheme s = pqc::PqcScheme::named(name, n);
            const auto d = static_cast<Eigen::Index>(1u << n);
            for (int i = 0; i < 20; ++i) {
                const QState rho = random_pure_state(Layout{{"m", n}}, rng);
                const Matrix diff = pqc::average_cipher(s, rho).density() - Matrix::Identity(d, d) / double(d);
                worst = std::max(worst, inf_norm(diff));
                ++states;
            }
        }
    }
    return {worst <= 1e-9, "max inf-norm deviation " + fmt("%.3e", worst) + " over " + std::to_string(states) +
                               " states"};
}

Verdict ac2() {
    bool ok = true;
    std::ostringstream os;
    std::size_t configs = 0;
    std::uint64_t sessions = 0;
    double worst = 0;
    for (const auto& cfg : protocols::enumerable_configs()) {
        const engine::ProtocolDef p = protocols::by_name(cfg.name, cfg.params);
        const engine::HoldingReport h = engine::verify_holding_condition(p);
        if (!h.passed()) {
            ok = false;
            os << " holding fails for " << p.name << ";";
        }
        Rng rng(202 + configs);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const QState msg = random_pure_state(p.message_layout(), rng);
            const engine::Transcript t = engine::run_session(p, msg, seed);
            worst = std::max(worst, t.phase_distance);
            if (t.status != engine::Status::Delivered || t.aborted_at_pass || t.phase_distance > 1e-9) {
                ok = false;
                os << " session " << seed << " of " << p.name << " not delivered;";
            }
            ++sessions;
        }
        ++configs;
    }
    return {ok, std::to_string(configs) + " configs hold, " + std::to_string(sessions) +
                    " honest sessions, max phase distance " + fmt("%.3e", worst) + os.str()};
}

Axis random_axis(Rng& rng) { return Axis::normalized(rng.normal(), rng.normal(), rng.normal()); }

Verdict ac3() {
    Rng rng(303);
    auto angle = [&rng] { return 1e-3 + rng.uniform() * (2 * kPi - 2e-3); };
    double parallel_max = 0;
    for (int i = 0; i < 100; ++i) {
        const Axis a = random_axis(rng);
        const double sign = rng.bit() ? 1.0 : -1.0;
        const Axis b(sign * a.x(), sign * a.y(), sign * a.z());
        parallel_max = std::max(parallel_max, algebra::rotation_commutator_norm(a, angle(), b, angle()));
    }
    double nonparallel_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const Axis a = random_axis(rng);
        Axis b = random_axis(rng);
        while (a.cross_norm(b) < 0.1) b = random_axis(rng);
        nonparallel_min = std::min(nonparallel_min, algebra::rotation_commutator_norm(a, angle(), b, angle()));
    }
    return {parallel_max <= 1e-9 && nonparallel_min >= 1e-3,
            "parallel max " + fmt("%.3e", parallel_max) + ", nonparallel min " + fmt("%.3e", nonparallel_min)};
}

// Phase of B^dag A^dag B A for members of a generated family, read off the key commutation sign.
algebra::PhaseTable commutation_phases(const pqc::PqcScheme& s) {
    algebra::PhaseTable t;
    for (std::uint64_t k = 0; k < s.key_count(); ++k)
        for (std::uint64_t l = 0; l < s.key_count(); ++l)
            t.set(k, l, pqc::generalized_commutation_phase(s, s.key_at(k), s.key_at(l)) == 1 ? 0.0 : kPi);
    return t;
}

Verdict ac4() {
    bool ok = true;
    double worst = 0;
    std::ostringstream os;
    for (const std::string scheme : {"XZ", "YH"}) {
        for (std::size_t n : {1u, 2u}) {
            const pqc::PqcScheme s = pqc::PqcScheme::named(scheme, n);
            const algebra::OperatorFamily fa = algebra::generated_family(scheme, s.u1(), s.u2(), n);
            const algebra::OperatorFamily fc = algebra::adjoint_family(fa, "C");
            const algebra::PhaseTable phases = commutation_phases(s);
            const algebra::Theorem1Report t1 = algebra::verify_theorem1(fa, fa, fc, fc, phases);
            const algebra::Theorem2Report t2 = algebra::verify_theorem2(fa, fa);
            worst = std::max({worst, t1.max_residual, t1.m_spread, t1.n_spread});
            if (!t1.passed || !t2.passed()) {
                ok = false;
                os << " " << scheme << " d=" << (1u << n) << " fails;";
            }
        }
    }
    // Negative control: one flipped phase must be rejected.
    const pqc::PqcScheme s = pqc::PqcScheme::named("XZ", 1);
    const algebra::OperatorFamily fa = algebra::generated_family("XZ", s.u1(), s.u2(), 1);
    algebra::PhaseTable bad = commutation_phases(s);
    bad.set(1, 2, bad.at(1, 2) + kPi);
    bool rejected = false;
    try {
        algebra::verify_theorem1(fa, fa, algebra::adjoint_family(fa, "C"), algebra::adjoint_family(fa, "C"), bad);
    } catch (const algebra::PairPreconditionError& e) {
        rejected = e.k() == 1 && e.l() == 2;
    }
    if (!rejected) {
        ok = false;
        os << " corrupted phase accepted;";
    }
    return {ok, "Pauli and YH families at d=2,4, max residual " + fmt("%.3e", worst) +
                    (rejected ? ", corrupted phase rejected" : "") + os.str()};
}

Verdict ac5() {
    Rng rng(505);
    double worst = 0;
    int count = 0;
    for (std::size_t d : {2u, 4u}) {
        for (int i = 0; i < 100; ++i) {
            const algebra::Lemma1Instance in = algebra::random_lemma1_instance(d, rng);
            const algebra::Lemma1Residuals r = algebra::verify_lemma1(in.n, in.m, in.a, in.b, in.p);
            worst = std::max({worst, r.first, r.second});
            ++count;
        }
    }
    return {worst <= 1e-9, std::to_string(count) + " instances, max residual " + fmt("%.3e", worst)};
}

Verdict ac6() {
    const attacks::AttackReport open = attacks::mim_reflect(protocols::commutative_basic(2), 200, 606);
    const attacks::KeyFactory keys = [](Rng& rng) {
        return std::optional(protocols::random_boolean_id_keys(2, 2, rng));
    };
    const attacks::AttackReport guarded = attacks::mim_reflect(protocols::boolean_with_id(2, 2), 200, 607, nullptr, keys);
    const bool ok = open.success_rate() == 1.0 && guarded.success == 0;
    return {ok, "unprotected success rate " + fmt("%.4f", open.success_rate()) + ", identified undetected successes " +
                    std::to_string(guarded.success) + "/200 (detected " + std::to_string(guarded.detected) + ")"};
}

// Binomial probability mass table for n draws at probability p.
std::vector<double> binomial_pmf(std::uint64_t n, double p) {
    std::vector<double> out(n + 1);
    const double lp = std::log(p), lq = std::log1p(-p);
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double lc = std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1);
        out[k] = std::exp(lc + double(k) * lp + double(n - k) * lq);
    }
    return out;
}

bool same_angle_mod_pi(double a, double b) {
    const double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d) <= 1e-9;
}

// Exact recovery probability of the two-phase unambiguous-identification campaign.
double uis_recovery_oracle(std::size_t grid, std::size_t index, double eps, std::uint64_t t) {
    const double phi_c = double(index) * kPi / double(grid);
    const std::uint64_t half = t / 2, rest = t - half;
    const std::vector<double> first = binomial_pmf(half, 0.5 + eps * std::cos(2 * phi_c));
    std::map<std::size_t, double> success_given_k1;
    double total = 0;
    for (std::uint64_t zeros = 0; zeros <= half; ++zeros) {
        if (first[zeros] < 1e-300) continue;
        const double c = std::clamp((double(zeros) / double(half) - 0.5) / eps, -1.0, 1.0);
        std::size_t k1 = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k <= grid / 2; ++k) {
            const double gap = std::abs(std::cos(2 * double(k) * kPi / double(grid)) - c);
            if (gap < best - 1e-12) {
                best = gap;
                k1 = k;
            }
        }
        auto it = success_given_k1.find(k1);
        if (it == success_given_k1.end()) {
            const double phi1 = double(k1) * kPi / double(grid), phi2 = kPi - phi1;
            const std::vector<double> second = binomial_pmf(rest, 0.5 + eps * std::cos(2 * (phi_c - phi1)));
            double s = 0;
            for (std::uint64_t hits = 0; hits <= rest; ++hits) {
                const double f = double(hits) / double(rest);
                const bool first_choice =
                    std::abs(f - (0.5 + eps)) <= std::abs(f - (0.5 + eps * std::cos(4 * phi1)));
                if (same_angle_mod_pi(first_choice ? phi1 : phi2, phi_c)) s += second[hits];
            }
            it = success_given_k1.emplace(k1, s).first;
        }
        total += first[zeros] * it->second;
    }
    return total;
}

Verdict ac7() {
    const std::size_t grid = 8;
    const double eps = 0.1;
    const std::uint64_t t = 10000, campaigns = 200;
    bool ok = true;
    double worst_z = 0, worst_gap = 0;
    std::ostringstream os;
    for (std::size_t index = 0; index < 2 * grid; ++index) {
        attacks::UisParams params;
        params.grid = grid;
        params.phi_c_index = index;
        params.epsilon = eps;
        params.t = t;
        params.campaigns = campaigns;
        params.seed = 700 + index;
        const attacks::AttackReport r = attacks::uis_attack(params);
        const double p0 = 0.5 + eps * std::cos(2 * double(index) * kPi / double(grid));
        const double sigma = std::sqrt(p0 * (1 - p0) / double(t / 2) / double(campaigns));
        const double z = std::abs(r.estimators.at("p0_mean") - p0) / sigma;
        const double oracle = uis_recovery_oracle(grid, index, eps, t);
        const double gap = std::abs(r.success_rate() - oracle);
        worst_z = std::max(worst_z, z);
        worst_gap = std::max(worst_gap, gap);
        if (z > 3 || gap > 0.05) {
            ok = false;
            os << " index " << index << " z=" << fmt("%.2f", z) << " rate " << fmt("%.3f", r.success_rate())
               << " oracle " << fmt("%.3f", oracle) << ";";
        }
    }
    return {ok, "16 angles, worst p0 deviation " + fmt("%.2f", worst_z) + " sigma, worst recovery gap " +
                    fmt("%.3f", worst_gap) + os.str()};
}

// Exact single-qubit probability that XOR-ing three computational-basis readings of the passes
// returns the bit, with uniformly random keys and collapse after every reading.
double three_reading_oracle(const Matrix& u1, const Matrix& u2) {
    auto key = [&](int a, int b) {
        Matrix k = Matrix::Identity(2, 2);
        if (a) k = k * u1;
        if (b) k = k * u2;
        return k;
    };
    double total = 0;
    for (int m = 0; m < 2; ++m)
        for (int ka = 0; ka < 4; ++ka)
            for (int kb = 0; kb < 4; ++kb) {
                const Matrix ua = key(ka >> 1, ka & 1), ub = key(kb >> 1, kb & 1);
                const Matrix ops[3] = {ua, ub, ua.adjoint()};
                for (int branch = 0; branch < 8; ++branch) {
                    Vector v = Vector::Zero(2);
                    v(m) = 1;
                    double p = 1;
                    int parity = 0;
                    for (int pass = 0; pass < 3; ++pass) {
                        v = ops[pass] * v;
                        const int o = (branch >> pass) & 1;
                        p *= std::norm(v(o));
                        v = Vector::Zero(2);
                        v(o) = 1;
                        parity ^= o;
                    }
                    if (parity == m) total += p;
                }
            }
    return total / 32.0;
}

Verdict ac8() {
    bool pauli_ok = true;
    for (const std::string scheme : {"XZ", "XY"}) {
        for (std::uint64_t m = 0; m < 16; ++m) {
            const attacks::AttackReport r = attacks::pauli_cipher_attack(scheme, 4, index_to_bits(m, 4), 10, 800 + m);
            if (r.success_rate() != 1.0) pauli_ok = false;
        }
    }
    const std::uint64_t trials = 10000;
    const attacks::AttackReport yh = attacks::pauli_cipher_attack("YH", 4, {}, trials, 808);
    const double target = 1.0 / 16;
    const double sigma = std::sqrt(target * (1 - target) / double(trials));
    const double z = std::abs(yh.success_rate() - target) / sigma;
    return {pauli_ok && z <= 3, std::string("XZ/XY all 16 messages ") + (pauli_ok ? "recovered" : "NOT recovered") +
                                    "; YH success " + fmt("%.4f", yh.success_rate()) + " vs target " +
                                    fmt("%.4f", target) + " (" + fmt("%.1f", z) + " sigma), branch oracle " +
                                    fmt("%.4f", std::pow(three_reading_oracle(gates::Y().matrix(), gates::H().matrix()), 4))};
}

Verdict ac9() {
    namespace fs = std::filesystem;
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "pqc", "--pairs", "XY,YH,XZ", "--n", "1..3", "--seed", "1"},
        {"verify", "holding-condition"},
        {"run", "pqc-qnk", "--scheme", "YH", "--n", "2", "--trials", "10", "--seed", "7"},
        {"run", "mutual-id", "--n", "2", "--m", "2", "--K", "4", "--trials", "20", "--seed", "2", "--jobs", "4"},
        {"verify", "prop5", "--samples", "100", "--seed", "3"},
        {"verify", "theorem1"},
        {"verify", "theorem2"},
        {"verify", "lemma1", "--samples", "100", "--dims", "2,4", "--seed", "5"},
        {"attack", "mim-reflect", "--protocol", "commutative-basic", "--trials", "50", "--seed", "6"},
        {"attack", "mim-reflect", "--protocol", "boolean-id", "--k", "2", "--n", "2", "--trials", "50", "--seed", "6"},
        {"attack", "uis", "--K", "8", "--eps", "0.1", "--t", "10000", "--phiC-index", "3", "--campaigns", "50",
         "--seed", "9"},
        {"attack", "pauli-cipher", "--scheme", "YH", "--n", "4", "--trials", "2000", "--seed", "8"},
    };
    const fs::path dir = fs::temp_directory_path() / "qnksim_acceptance_determinism";
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    std::size_t identical = 0;
    std::ostringstream os;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string bytes[2];
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = dir / ("cmd" + std::to_string(i) + "_" + std::to_string(rep) + ".jsonl");
            std::vector<std::string> args = commands[i];
            args.insert(args.end(), {"--out", out.string()});
            std::ostringstream sink_out, sink_err;
            const int code = cli::run(args, sink_out, sink_err);
            if (code != 0) os << " " << commands[i][0] << " " << commands[i][1] << " exit " << code << ";";
            bytes[rep] = slurp(out);
        }
        if (!bytes[0].empty() && bytes[0] == bytes[1]) {
            ++identical;
        } else {
            os << " " << commands[i][0] << " " << commands[i][1] << " differs;";
        }
    }
    fs::remove_all(dir);
    return {identical == commands.size() && os.str().empty(),
            std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical" + os.str()};
}

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion (1-9)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "perfect encryption", 5, ac1},
        {2, "holding condition", 30, ac2},
        {3, "rotation commutation dichotomy", 1, ac3},
        {4, "operator family witnesses", 5, ac4},
        {5, "realignment identity", 2, ac5},
        {6, "reflection attack", 20, ac6},
        {7, "unambiguous identification attack", 60, ac7},
        {8, "cipher measurement attacks", 30, ac8},
        {9, "determinism", 120, ac9},
    };
    bool all = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = v.pass && in_time;
        all = all && pass;
        std::cout << "AC" << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.title << ": " << v.detail << " ["
                  << fmt("%.2f", secs) << " s, budget " << fmt("%.0f", c.budget_seconds) << " s"
                  << (in_time ? "" : ", over budget") << "]" << std::endl;
    }
    return all ? 0 : 1;
}
