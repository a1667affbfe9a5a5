#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rsum/certificate_json.hpp"
#include "rsum/distribution.hpp"
#include "rsum/prover.hpp"
#include "rsum/random_unit.hpp"
#include "rsum/rational.hpp"
#include "rsum/sweep.hpp"
#include "rsum/verify.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

// Exit codes: 0 all assertions hold, 1 a mathematical assertion failed,
// 2 input or usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string command;
    std::string weights_arg;
    std::string sweep_which = "L";
    Rational threshold = Rational(1);
    bool strict = false;
    bool ingest = false;
    Rational grid_step = grid::kStep;
    Rational margin_e = grid::kMargin;
    std::string output_format = "json";
    std::string output_path;
    std::size_t enumeration_limit = kMeetInMiddleLimit;
    std::uint64_t random_seed = 1;
    std::size_t random_count = 0;
    std::size_t max_n = 12;
};

namespace cli_detail {

// Weight lists: comma separated rationals or decimals, with a repetition
// shorthand "v x k" / "v×k" ("1/3x9" means nine thirds). "@path" reads the
// list (whitespace or comma separated) from a file.
inline std::vector<Rational> parse_weights(const std::string& arg) {
    std::string text = arg;
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw ParseError("cannot open weights file " + text.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        for (auto& c : text) {
            if (c == '\n' || c == '\t' || c == ' ') c = ',';
        }
    }
    std::vector<Rational> out;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        std::string item = token;
        token.clear();
        // repetition marker: ascii 'x' or utf-8 multiplication sign
        std::size_t split = std::string::npos;
        if (auto p = item.find("\xc3\x97"); p != std::string::npos) {
            split = p;
        } else if (auto q = item.find('x'); q != std::string::npos) {
            split = q;
        }
        std::string value = item, count;
        if (split != std::string::npos) {
            value = item.substr(0, split);
            count = item.substr(split + (item[split] == 'x' ? 1 : 2));
        }
        Rational v = parse_rational(value);
        long long reps = 1;
        if (!count.empty()) {
            try {
                reps = std::stoll(count);
            } catch (...) {
                throw ParseError("bad repetition count in " + item);
            }
            if (reps < 1 || reps > 64) throw ParseError("repetition count out of range in " + item);
        }
        for (long long i = 0; i < reps; ++i) out.push_back(v);
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    if (out.empty()) throw ParseError("no weights given");
    return out;
}

inline WeightVector load_vector(const RunConfig& cfg) {
    std::vector<Rational> raw = parse_weights(cfg.weights_arg);
    return cfg.ingest ? WeightVector::ingest(std::move(raw)) : WeightVector::from_rationals(std::move(raw));
}

inline WeightVector random_by_category(Rng& rng, std::size_t idx, std::size_t max_n) {
    switch (idx % 6) {
        case 0: return random_unit_vector(rng, max_n);
        case 1: return random_mid1_vector(rng, std::max<std::size_t>(max_n, 9));
        case 2: return random_small_a_vector(rng, std::max<std::size_t>(max_n, 12));
        case 3: return random_mid2_small_vector(rng, std::max<std::size_t>(max_n, 12));
        case 4: return random_mid2_nosmall_vector(rng, std::max<std::size_t>(max_n, 12));
        default: return random_big_a1_vector(rng, std::max<std::size_t>(max_n, 6));
    }
}

}  // namespace cli_detail

inline int cmd_exact(const RunConfig& cfg, std::ostream& out) {
    WeightVector a = cli_detail::load_vector(cfg);
    Rational p = prob_abs_within(a, cfg.threshold, cfg.strict, cfg.enumeration_limit);
    Json j{{"command", "exact"},
           {"weights", a.to_string()},
           {"n", a.n()},
           {"threshold", fraction_string(cfg.threshold)},
           {"strict", cfg.strict},
           {"renormalized", a.renormalized()},
           {"probability", fraction_string(p)},
           {"decimal", decimal_string(p)}};
    out << j.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_distribution(const RunConfig& cfg, std::ostream& out) {
    WeightVector a = cli_detail::load_vector(cfg);
    SumDistribution dist = exact_distribution(a, std::min(cfg.enumeration_limit, kFullEnumerationLimit));
    if (cfg.output_format == "csv") {
        out << "value_fraction,value_decimal,probability_fraction,probability_decimal\n";
        for (const auto& [v, p] : dist.atoms) {
            out << fraction_string(v) << "," << decimal_string(v) << "," << fraction_string(p) << ","
                << decimal_string(p) << "\n";
        }
        return kExitOk;
    }
    Json atoms = Json::array();
    for (const auto& [v, p] : dist.atoms) {
        atoms.push_back(Json{{"value", rational_json(v)}, {"probability", rational_json(p)}});
    }
    Json j{{"command", "distribution"},
           {"weights", a.to_string()},
           {"n", a.n()},
           {"renormalized", a.renormalized()},
           {"atoms", atoms}};
    out << j.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_bound(const RunConfig& cfg, std::ostream& out) {
    WeightVector a = cli_detail::load_vector(cfg);
    ProofCertificate cert = certified_lower_bound(a);
    Json j = certificate_json(cert);
    j["weights"] = a.to_string();
    j["renormalized"] = a.renormalized();
    out << j.dump(2) << "\n";
    bool ok = cert.lower_bound >= constants::kTargetBound && cert.sound != Soundness::Unsound &&
              replay_certificate(cert);
    return ok ? kExitOk : kExitAssertionFailed;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.sweep_which != "L" && cfg.sweep_which != "M") throw ParseError("sweep expects L or M");
    if (cfg.margin_e < cfg.grid_step / 2) {
        err << "warning: margin " << fraction_string(cfg.margin_e) << " is below step/2 = "
            << fraction_string(cfg.grid_step / 2) << "; rounding domination is not guaranteed\n";
    }
    SweepReport report = cfg.sweep_which == "L" ? sweep_L_prime(cfg.margin_e, cfg.grid_step)
                                                : sweep_M_prime(cfg.margin_e, cfg.grid_step);
    std::string csv_path = cfg.output_path.empty() ? "lp_sweep_" + cfg.sweep_which + ".csv" : cfg.output_path;
    {
        std::ofstream csv(csv_path);
        if (!csv) throw ParseError("cannot write " + csv_path);
        write_sweep_csv(report, csv);
    }
    Json j{{"command", "sweep"},
           {"family", cfg.sweep_which},
           {"margin", fraction_string(report.margin_e)},
           {"step", fraction_string(cfg.grid_step)},
           {"points", report.grid_points.size()},
           {"max_value", rational_json(report.max_value)},
           {"max_point", Json{{"a1p", fraction_string(report.max_a1p)},
                              {cfg.sweep_which == "L" ? "a2p" : "ajp", fraction_string(report.max_a2p)}}},
           {"threshold", fraction_string(report.threshold)},
           {"all_below", report.all_below},
           {"csv", csv_path}};
    out << j.dump(2) << "\n";
    return report.all_below ? kExitOk : kExitAssertionFailed;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    std::vector<WeightVector> vectors;
    if (!cfg.weights_arg.empty()) {
        vectors.push_back(cli_detail::load_vector(cfg));
    } else if (cfg.random_count > 0) {
        Rng rng(cfg.random_seed);
        for (std::size_t i = 0; i < cfg.random_count; ++i) {
            vectors.push_back(cli_detail::random_by_category(rng, i, cfg.max_n));
        }
    } else {
        throw ParseError("verify needs -w or --random N");
    }
    Json reports = Json::array();
    bool all_pass = true;
    for (const auto& a : vectors) {
        VectorReport r = verify_vector(a);
        all_pass = all_pass && r.all_pass;
        reports.push_back(vector_report_json(r));
    }
    Json j{{"command", "verify"},
           {"seed", cfg.random_seed},
           {"vectors", reports},
           {"all_pass", all_pass}};
    out << j.dump(2) << "\n";
    return all_pass ? kExitOk : kExitAssertionFailed;
}

inline int run_cli(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "exact") return cmd_exact(cfg, out);
        if (cfg.command == "distribution") return cmd_distribution(cfg, out);
        if (cfg.command == "bound") return cmd_bound(cfg, out);
        if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        err << "unknown command: " << cfg.command << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EmptyVector& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotUnitNorm& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NegativeWeight& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidParameters& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        // BoundViolated, DominationViolated, LemmaViolated, OutOfCaseRange,
        // Infeasible, Unbounded: a mathematical assertion failed
        err << "assertion failed: " << e.what() << "\n";
        return kExitAssertionFailed;
    }
}

}  // namespace rsum
