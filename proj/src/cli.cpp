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


#include "qnk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qnk/algebra.hpp"
#include "qnk/attacks.hpp"
#include "qnk/engine.hpp"
#include "qnk/error.hpp"
#include "qnk/pqc.hpp"
#include "qnk/protocols.hpp"
#include "qnk/serialize.hpp"

namespace qnk::cli {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) {
        return {0, 1};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    auto number = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("expected a number list, got '" + text + "'");
        }
        return static_cast<std::size_t>(std::stoull(s));
    };
    std::vector<std::size_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::size_t a = number(text.substr(0, dots));
        const std::size_t b = number(text.substr(dots + 2));
        if (b < a || b - a > 64) {
            throw ConfigError("bad range '" + text + "'");
        }
        for (std::size_t i = a; i <= b; ++i) {
            out.push_back(i);
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(number(item));
    }
    if (out.empty()) {
        throw ConfigError("empty number list");
    }
    return out;
}

namespace {

struct Options {
    std::string target;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 1;
    std::string out_path;
    std::string format = "summary";
    std::size_t jobs = 1;
    bool full_states = false;
    std::string config;

    // protocol parameters
    std::string n = "2";
    std::size_t k = 2;
    std::size_t m = 2;
    std::size_t grid = protocols::kDefaultGridSize;
    std::string scheme = "YH";
    std::string protocol;

    // run
    std::string message = "random";
    std::string adversary = "none";

    // verify
    std::size_t samples = 20;
    std::string pairs = "XZ,XY,YH";
    std::string dims = "2,4";
    bool corrupt = false;

    // attack
    double eps = 0.1;
    std::optional<double> assumed_eps;
    std::uint64_t t = 10000;
    std::optional<std::size_t> phi_c_index;
    std::uint64_t campaigns = 1;
    std::string harvest = "analytic";
    bool defense = false;
    std::string policy = "fixed";
    std::size_t basis_index = 0;
};

std::size_t single_n(const Options& o) {
    const auto v = parse_size_list(o.n);
    if (v.size() != 1) {
        throw ConfigError("--n must be a single number here");
    }
    return v[0];
}

protocols::ProtocolParams protocol_params(const Options& o) {
    protocols::ProtocolParams p;
    p.n = single_n(o);
    p.k = o.k;
    p.m = o.m;
    p.grid = o.grid;
    p.scheme = o.scheme;
    p.seed = o.seed.value_or(0);
    return p;
}

/// Output sink: the --out file if given, else `fallback`.
class Sink {
   public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw ConfigError("cannot open output file '" + path + "'");
            }
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

   private:
    std::ofstream file_;
    std::ostream* os_;
};

bool writes_records(const Options& o) {
    return !o.out_path.empty() || o.format == "jsonl";
}

std::string fixed(double x, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string rate_line(const std::string& label, std::uint64_t count, std::uint64_t trials) {
    const Interval ci = wilson_interval(count, trials);
    const double rate = trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0;
    std::ostringstream os;
    os << label << " " << count << "/" << trials << " rate " << fixed(rate) << " 95% CI [" << fixed(ci.low)
       << ", " << fixed(ci.high) << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// run

QState make_message(const Options& o, const Layout& layout, Rng& rng) {
    const std::string& spec = o.message;
    if (spec == "random") {
        return random_pure_state(layout, rng);
    }
    if (spec == "zeros") {
        return QState::zeros(layout);
    }
    if (spec == "random-bits") {
        return QState::basis(layout, rng.below(layout.dim()));
    }
    if (spec == "plus") {
        const auto d = static_cast<Eigen::Index>(layout.dim());
        return QState::pure(layout, Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0)));
    }
    const std::string bits = spec.rfind("bits:", 0) == 0 ? spec.substr(5) : spec;
    const Bits b = parse_bits(bits);
    if (b.size() != layout.total_qubits()) {
        throw ConfigError("message '" + spec + "' has " + std::to_string(b.size()) + " bits, the protocol takes " +
                          std::to_string(layout.total_qubits()));
    }
    return QState::basis(layout, bits_to_index(b));
}

std::unique_ptr<engine::Adversary> make_adversary(const std::string& name) {
    if (name == "none") {
        return nullptr;
    }
    if (name == "reflect") {
        return std::make_unique<attacks::ReflectAdversary>();
    }
    if (name == "measure") {
        return std::make_unique<attacks::CipherMeasureAdversary>();
    }
    if (name == "forward") {
        return std::make_unique<engine::TransparentAdversary>();
    }
    throw ConfigError("unknown adversary '" + name + "' (none, forward, reflect, measure)");
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, 64);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < std::min(jobs, count); ++j) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

int cmd_run(const Options& o, std::ostream& out) {
    if (!o.seed) {
        throw ConfigError("run needs --seed");
    }
    const engine::ProtocolDef p = protocols::by_name(o.target, protocol_params(o));
    make_adversary(o.adversary);
    const std::uint64_t seed = *o.seed;
    std::vector<engine::Transcript> transcripts(o.trials);
    parallel_for(o.trials, o.jobs, [&](std::size_t i) {
        const std::uint64_t s = derive_seed(seed, i);
        Rng msg_rng = Rng(s).fork(7);
        const QState msg = make_message(o, p.message_layout(), msg_rng);
        auto eve = make_adversary(o.adversary);
        transcripts[i] = engine::run_session(p, msg, std::nullopt, eve.get(), s, i);
    });

    std::uint64_t delivered = 0;
    std::uint64_t aborted = 0;
    double sum_pd = 0;
    double max_pd = 0;
    for (const auto& t : transcripts) {
        if (t.status == engine::Status::Aborted) {
            ++aborted;
        } else if (t.phase_distance <= kTolerance) {
            ++delivered;
        }
        sum_pd += t.phase_distance;
        max_pd = std::max(max_pd, t.phase_distance);
    }
    if (writes_records(o)) {
        Sink sink(o.out_path, out);
        for (const auto& t : transcripts) {
            sink.stream() << transcript_to_json(t, o.full_states).dump() << "\n";
        }
    }
    if (o.format == "summary") {
        out << "protocol " << p.name << "\n";
        if (!transcripts.empty()) {
            for (const auto& w : transcripts.front().warnings) {
                out << "warning " << w << "\n";
            }
        }
        out << "sessions " << o.trials << " delivered " << delivered << " aborted " << aborted << "\n";
        out << "mean_phase_distance " << fixed(o.trials ? sum_pd / static_cast<double>(o.trials) : 0.0)
            << " max_phase_distance " << fixed(max_pd) << "\n";
    }
    const bool honest = o.adversary == "none" || o.adversary == "forward";
    return honest && delivered != o.trials ? kExitVerificationFailure : kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
    bool passed = true;
    Json rows = Json::array();
    std::vector<std::string> lines;

    void add(const std::string& item, double value, bool ok, const std::string& what) {
        passed = passed && ok;
        rows.push_back({{"item", item}, {"value", std::isfinite(value) ? Json(value) : Json(nullptr)},
                        {"metric", what}, {"passed", ok}});
        lines.push_back(item + " " + what + " " + fixed(value, 4) + " " + (ok ? "PASS" : "FAIL"));
    }
};

std::vector<algebra::OperatorFamily> theorem_families() {
    std::vector<algebra::OperatorFamily> out;
    out.push_back(algebra::pauli_family(1));
    out.push_back(algebra::pauli_family(2));
    out.push_back(algebra::generated_family("YH1", gates::Y(), gates::H(), 1));
    out.push_back(algebra::generated_family("YH2", gates::Y(), gates::H(), 2));
    return out;
}

SuiteResult suite_lemma1(const Options& o, Rng& rng) {
    SuiteResult r;
    for (std::size_t d : parse_size_list(o.dims)) {
        double worst = 0;
        for (std::size_t i = 0; i < o.samples; ++i) {
            algebra::Lemma1Instance in = algebra::random_lemma1_instance(d, rng);
            if (o.corrupt && i == 0) {
                in.b = random_unitary(d, rng);
            }
            try {
                const auto res = algebra::verify_lemma1(in.n, in.m, in.a, in.b, in.p);
                worst = std::max({worst, res.first, res.second});
            } catch (const PreconditionError& e) {
                r.add("d=" + std::to_string(d) + " sample " + std::to_string(i), NAN, false,
                      std::string("precondition violated: ") + e.what());
            }
        }
        r.add("d=" + std::to_string(d), worst, worst <= kTolerance, "max_residual");
    }
    return r;
}

SuiteResult suite_theorem1(const Options& o) {
    SuiteResult r;
    for (const auto& f : theorem_families()) {
        const auto fc = algebra::adjoint_family(f, f.label + "^dag");
        try {
            algebra::PhaseTable phases = algebra::derive_phases(f, f, fc, fc);
            if (o.corrupt) {
                phases.set(0, 0, phases.at(0, 0) + 0.5);
            }
            const auto rep = algebra::verify_theorem1(f, f, fc, fc, phases);
            r.add(f.label, rep.max_residual, rep.passed, "max_residual");
        } catch (const algebra::PairPreconditionError& e) {
            r.add(f.label + " pair (" + std::to_string(e.k()) + "," + std::to_string(e.l()) + ")", NAN, false,
                  e.what());
        }
    }
    return r;
}

SuiteResult suite_theorem2(const Options&) {
    SuiteResult r;
    for (const auto& f : theorem_families()) {
        const auto rep = algebra::verify_theorem2(f, f);
        r.add(f.label, static_cast<double>(rep.falsified.size()), rep.passed(), "falsified_pairs");
    }
    return r;
}

SuiteResult suite_prop1(const Options& o, Rng& rng) {
    SuiteResult r;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < o.samples; ++i) {
        const auto fa = BooleanTable::random(2, 2, rng);
        const auto fb = BooleanTable::random(2, 2, rng);
        const auto pairs = {algebra::remark1_shift(random_bits(3, rng), random_bits(3, rng)),
                            algebra::remark1_single_register(fa, fb), algebra::remark1_two_registers(fa, fb)};
        for (const auto& pr : pairs) {
            if (!pr.commute.all() || !pr.commute.agree()) {
                ++bad;
            }
        }
    }
    r.add("remark1-instances", static_cast<double>(bad), bad == 0, "non_commuting");
    return r;
}

SuiteResult suite_prop5(const Options& o, Rng& rng) {
    SuiteResult r;
    auto angle = [&rng] { return 1e-3 + rng.uniform() * (2 * std::numbers::pi - 2e-3); };
    auto axis = [&rng] { return Axis::normalized(rng.normal(), rng.normal(), rng.normal()); };
    double worst_parallel = 0;
    double least_nonparallel = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < o.samples; ++i) {
        const Axis n1 = axis();
        const Axis n2 = rng.bit() ? n1 : Axis::normalized(-n1.x(), -n1.y(), -n1.z());
        worst_parallel = std::max(worst_parallel, algebra::rotation_commutator_norm(n1, angle(), n2, angle()));
    }
    for (std::size_t i = 0; i < o.samples; ++i) {
        Axis n1 = axis();
        Axis n2 = axis();
        while (n1.cross_norm(n2) < 0.1) {
            n2 = axis();
        }
        least_nonparallel = std::min(least_nonparallel, algebra::rotation_commutator_norm(n1, angle(), n2, angle()));
    }
    r.add("parallel", worst_parallel, worst_parallel <= kTolerance, "max_commutator");
    r.add("nonparallel", least_nonparallel, least_nonparallel >= 1e-3, "min_commutator");
    return r;
}

SuiteResult suite_pqc(const Options& o, Rng& rng) {
    SuiteResult r;
    std::stringstream ss(o.pairs);
    std::string name;
    std::vector<std::string> names;
    while (std::getline(ss, name, ',')) {
        names.push_back(name);
    }
    for (const auto& s : names) {
        for (std::size_t n : parse_size_list(o.n)) {
            const pqc::PqcScheme scheme = pqc::PqcScheme::named(s, n);
            const auto gen = pqc::validate_generators(scheme.u1(), scheme.u2());
            double worst = 0;
            const Layout layout{{"m", n}};
            const auto d = static_cast<Eigen::Index>(layout.dim());
            const Matrix target = Matrix::Identity(d, d) / static_cast<double>(d);
            for (std::size_t i = 0; i < o.samples; ++i) {
                const QState avg = pqc::average_cipher(scheme, random_pure_state(layout, rng));
                worst = std::max(worst, max_abs(avg.density_matrix() - target));
            }
            r.add(s + " n=" + std::to_string(n), worst, gen.passed && worst <= kTolerance, "max_deviation");
        }
    }
    return r;
}

std::vector<protocols::NamedConfig> chosen_configs(const Options& o) {
    if (o.protocol.empty()) {
        return protocols::enumerable_configs();
    }
    return {{o.protocol, protocol_params(o)}};
}

std::string config_label(const protocols::NamedConfig& c, const engine::ProtocolDef& p) {
    return p.name + " n=" + std::to_string(c.params.n);
}

SuiteResult suite_holding(const Options& o) {
    SuiteResult r;
    for (const auto& c : chosen_configs(o)) {
        const auto p = protocols::by_name(c.name, c.params);
        const auto rep = engine::verify_holding_condition(p);
        r.add(config_label(c, p) + " pairs=" + std::to_string(rep.pairs), static_cast<double>(rep.pairs - rep.holding_pairs),
              rep.passed(), "violating_pairs");
    }
    return r;
}

SuiteResult suite_identified(const Options& o) {
    SuiteResult r;
    std::vector<protocols::NamedConfig> configs;
    if (o.protocol.empty()) {
        for (const auto& c : protocols::enumerable_configs()) {
            if (protocols::by_name(c.name, c.params).has_identification()) {
                configs.push_back(c);
            }
        }
    } else {
        configs = chosen_configs(o);
    }
    for (const auto& c : configs) {
        const auto p = protocols::by_name(c.name, c.params);
        const auto rep = engine::identified_condition_check(p, {}, engine::kMaxEnumeratedPairs, o.seed.value_or(0));
        r.add(config_label(c, p) + " pairs=" + std::to_string(rep.pairs), rep.max_leak, rep.passed(), "max_leak");
    }
    return r;
}

std::vector<std::string> suite_names() {
    return {"lemma1", "theorem1", "theorem2", "prop1", "prop5", "pqc", "holding-condition", "identified-condition"};
}

int cmd_verify(const Options& o, std::ostream& out) {
    Rng rng(o.seed.value_or(0));
    SuiteResult r;
    const std::string& s = o.target;
    if (s == "lemma1") {
        r = suite_lemma1(o, rng);
    } else if (s == "theorem1") {
        r = suite_theorem1(o);
    } else if (s == "theorem2") {
        r = suite_theorem2(o);
    } else if (s == "prop1") {
        r = suite_prop1(o, rng);
    } else if (s == "prop5") {
        r = suite_prop5(o, rng);
    } else if (s == "pqc") {
        r = suite_pqc(o, rng);
    } else if (s == "holding-condition") {
        r = suite_holding(o);
    } else if (s == "identified-condition") {
        r = suite_identified(o);
    } else {
        throw ConfigError("unknown verifier suite '" + s + "'");
    }
    Json report{{"suite", s}, {"seed", o.seed.value_or(0)}, {"passed", r.passed}, {"rows", r.rows}};
    if (writes_records(o)) {
        Sink sink(o.out_path, out);
        sink.stream() << report.dump() << "\n";
    }
    if (o.format == "summary") {
        out << "suite " << s << "\n";
        for (const auto& l : r.lines) {
            out << l << "\n";
        }
        out << (r.passed ? "PASS" : "FAIL") << "\n";
    }
    return r.passed ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// attack

attacks::KeyFactory key_factory(const std::string& name, const protocols::ProtocolParams& pp,
                                const engine::ProtocolDef& p) {
    if (name == "boolean-id") {
        return [pp](Rng& rng) { return std::optional(protocols::random_boolean_id_keys(pp.k, pp.n, rng)); };
    }
    if (name == "hadamard-cnot") {
        return [pp](Rng& rng) {
            const Bits a = random_bits(pp.n, rng);
            const Bits b = random_bits(pp.n, rng);
            return std::optional(protocols::hadamard_keys(a, b));
        };
    }
    (void)p;
    return nullptr;
}

int cmd_attack(const Options& o, std::ostream& out) {
    const std::uint64_t seed = o.seed.value_or(0);
    attacks::AttackReport rep;
    const std::string& a = o.target;
    if (a == "mim-reflect") {
        const std::string name = o.protocol.empty() ? "commutative-basic" : o.protocol;
        const auto pp = protocol_params(o);
        const auto p = protocols::by_name(name, pp);
        rep = attacks::mim_reflect(p, o.trials, seed, nullptr, key_factory(name, pp, p));
    } else if (a == "photon-swap") {
        attacks::PhotonSwapParams ps;
        ps.n = single_n(o);
        ps.m = o.m;
        ps.grid = o.grid;
        ps.defense = o.defense;
        ps.phi_c_index = o.phi_c_index;
        ps.trials = o.trials;
        ps.seed = seed;
        rep = attacks::mim_photon_swap(ps);
    } else if (a == "uis") {
        attacks::UisParams up;
        up.grid = o.grid;
        up.phi_c_index = o.phi_c_index.value_or(0);
        up.epsilon = o.eps;
        up.assumed_epsilon = o.assumed_eps;
        up.t = o.t;
        up.campaigns = o.campaigns;
        up.seed = seed;
        if (o.harvest == "analytic") {
            up.harvest = attacks::Harvest::Analytic;
        } else if (o.harvest == "engine") {
            up.harvest = attacks::Harvest::Engine;
        } else {
            throw ConfigError("--harvest must be analytic or engine");
        }
        rep = attacks::uis_attack(up);
    } else if (a == "pauli-cipher") {
        const Bits msg = o.message == "random" ? Bits{} : parse_bits(o.message);
        rep = attacks::pauli_cipher_attack(o.scheme, single_n(o), msg, o.trials, seed);
    } else if (a == "intercept-resend") {
        attacks::InterceptParams ip;
        ip.grid = o.grid;
        if (o.policy == "fixed") {
            ip.policy = attacks::BasisPolicy::Fixed;
        } else if (o.policy == "random") {
            ip.policy = attacks::BasisPolicy::Random;
        } else if (o.policy == "none") {
            ip.policy = attacks::BasisPolicy::None;
        } else {
            throw ConfigError("--policy must be fixed, random or none");
        }
        ip.basis_index = o.basis_index;
        ip.trials = o.trials;
        ip.seed = seed;
        rep = attacks::intercept_resend(ip);
    } else {
        throw ConfigError("unknown attack '" + a + "'");
    }
    if (writes_records(o)) {
        Sink sink(o.out_path, out);
        sink.stream() << report_to_json(rep).dump() << "\n";
    }
    if (o.format == "summary") {
        out << "attack " << rep.attack << " status " << rep.status << "\n";
        out << rate_line("success", rep.success, rep.trials) << "\n";
        out << rate_line("detected", rep.detected, rep.trials) << "\n";
        for (const auto& [k, v] : rep.estimators) {
            out << k << " " << fixed(v) << "\n";
        }
    }
    return kExitOk;
}

int cmd_list(std::ostream& out) {
    auto line = [&out](const std::string& label, const std::vector<std::string>& items) {
        out << label << ":";
        for (const auto& i : items) {
            out << " " << i;
        }
        out << "\n";
    };
    line("protocols", protocols::protocol_names());
    line("attacks", attacks::attack_names());
    line("verify", suite_names());
    line("schemes", pqc::PqcScheme::names());
    line("adversaries", {"none", "forward", "reflect", "measure"});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// argument handling

/// Flags from a JSON config object, placed before the command-line flags so
/// that the latter win.
std::vector<std::string> config_flags(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    std::vector<std::string> flags;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                flags.push_back(flag);
            }
        } else if (value.is_string()) {
            flags.push_back(flag);
            flags.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            flags.push_back(flag);
            flags.push_back(value.dump());
        } else {
            throw ConfigError("config key '" + key + "' must be a string, number or boolean");
        }
    }
    return flags;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--trials", o.trials, "Number of sessions or trials");
    sub->add_option("--out", o.out_path, "Output file for records");
    sub->add_option("--format", o.format, "jsonl or summary")->check(CLI::IsMember({"jsonl", "summary"}));
    sub->add_option("--jobs", o.jobs, "Parallel sessions");
    sub->add_flag("--full-states", o.full_states, "Write every state in full");
    sub->add_option("--config", o.config, "JSON config file; flags override it");
}

void add_protocol_params(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Message size (or a list/range for verify pqc)");
    sub->add_option("--k", o.k, "Boolean input bits");
    sub->add_option("--m", o.m, "ID-photons per group");
    sub->add_option("--grid,--K", o.grid, "Angle grid size K");
    sub->add_option("--scheme", o.scheme, "PQC scheme XZ, XY or YH");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Quantum no-key protocol simulator and verifier", "qnksim"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    CLI::App* run_cmd = app.add_subcommand("run", "Run honest or attacked protocol sessions");
    run_cmd->add_option("protocol", o.target, "Protocol name")->required();
    add_common(run_cmd, o);
    add_protocol_params(run_cmd, o);
    run_cmd->add_option("--message", o.message, "random, zeros, plus, random-bits or a bit string");
    run_cmd->add_option("--adversary", o.adversary, "none, forward, reflect or measure");

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verifier suite");
    verify_cmd->add_option("suite", o.target, "Suite name")->required();
    add_common(verify_cmd, o);
    add_protocol_params(verify_cmd, o);
    verify_cmd->add_option("--protocol", o.protocol, "Protocol for holding/identified checks");
    verify_cmd->add_option("--samples", o.samples, "Random samples per item");
    verify_cmd->add_option("--pairs", o.pairs, "Comma-separated PQC schemes");
    verify_cmd->add_option("--dims", o.dims, "Dimensions for lemma1");
    verify_cmd->add_flag("--corrupt", o.corrupt, "Negative control: corrupt one input");

    CLI::App* attack_cmd = app.add_subcommand("attack", "Run an attack campaign");
    attack_cmd->add_option("attack", o.target, "Attack name")->required();
    add_common(attack_cmd, o);
    add_protocol_params(attack_cmd, o);
    attack_cmd->add_option("--protocol", o.protocol, "Target protocol for mim-reflect");
    attack_cmd->add_option("--message", o.message, "Message bits for pauli-cipher (random by default)");
    attack_cmd->add_option("--eps", o.eps, "Source bias epsilon");
    attack_cmd->add_option("--assumed-eps", o.assumed_eps, "Eve's belief about epsilon");
    attack_cmd->add_option("--t", o.t, "Harvested states per campaign");
    attack_cmd->add_option("--phiC-index", o.phi_c_index, "Grid index of phi_C");
    attack_cmd->add_option("--campaigns", o.campaigns, "UIS campaigns");
    attack_cmd->add_option("--harvest", o.harvest, "analytic or engine");
    attack_cmd->add_flag("--defense", o.defense, "Split each bit into XOR shares");
    attack_cmd->add_option("--policy", o.policy, "fixed, random or none");
    attack_cmd->add_option("--basis-index", o.basis_index, "Grid index of Eve's fixed basis");

    app.add_subcommand("list", "List protocols, attacks and suites");

    try {
        std::vector<std::string> argv = args;
        const auto cfg = std::find(argv.begin(), argv.end(), "--config");
        if (cfg != argv.end() && cfg + 1 != argv.end() && !argv.empty()) {
            const auto flags = config_flags(*(cfg + 1));
            argv.insert(argv.begin() + 1, flags.begin(), flags.end());
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (o.jobs == 0) {
            throw ConfigError("--jobs must be at least 1");
        }
        if (run_cmd->parsed()) {
            return cmd_run(o, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(o, out);
        }
        if (attack_cmd->parsed()) {
            return cmd_attack(o, out);
        }
        return cmd_list(out);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const PreconditionError& e) {
        err << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace qnk::cli
