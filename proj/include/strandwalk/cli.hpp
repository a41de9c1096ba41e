#pragma once

#include "strandwalk/diagram.hpp"
#include "strandwalk/engine.hpp"
#include "strandwalk/finitetype.hpp"
#include "strandwalk/markov.hpp"
#include "strandwalk/moves.hpp"
#include "strandwalk/report.hpp"
#include "strandwalk/tangle_format.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace strandwalk::cli {

struct Options {
    std::vector<std::string> files;
    std::vector<std::string> braids;
    int n = 0;
    std::vector<std::string> doubles;
    std::string t_text;
    std::string eval_text;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int nmax = 200;
    int order = 5;
    int k = 0;
    int exponent = 2;
    std::string move_text;
    bool json = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Loads the inputs named by --file/--braid, in that order, singular flags
/// allowed. `expected` of 0 means "any positive number".
inline std::vector<SingularStringLink> load_inputs(const Options& o, std::size_t expected) {
    std::vector<SingularStringLink> inputs;
    for (const auto& path : o.files) inputs.push_back(parse_singular_tangle(read_file(path)));
    if (!o.braids.empty()) {
        if (o.n < 1) throw parse_error("braid input requires -n <strand count>");
        for (const auto& w : o.braids) inputs.push_back(SingularStringLink{parse_braid(w, o.n), {}});
    }
    if (inputs.empty()) throw parse_error("no input: give --file or --braid");
    if (expected != 0 && inputs.size() != expected)
        throw parse_error("expected " + std::to_string(expected) + " input(s), got " +
                          std::to_string(inputs.size()));
    return inputs;
}

inline int parse_crossing_id(const std::string& text, const StringLinkDiagram& d) {
    std::string digits = text;
    if (!digits.empty() && (digits[0] == 'c' || digits[0] == 'C')) digits = digits.substr(1);
    try {
        std::size_t used = 0;
        int id = std::stoi(digits, &used);
        if (used != digits.size()) throw std::invalid_argument("");
        if (id < 1 || id > d.crossing_count()) throw std::domain_error("unknown crossing " + text);
        return id - 1;
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("malformed crossing id '" + text + "' (expected c<k>)");
    }
}

/// One singular input; --double flags mark additional crossings.
inline SingularStringLink load_singular(const Options& o) {
    SingularStringLink s = load_inputs(o, 1)[0];
    for (const auto& id : o.doubles) s.double_points.insert(parse_crossing_id(id, s.base));
    return s;
}

inline StringLinkDiagram load_plain(const Options& o) {
    SingularStringLink s = load_singular(o);
    if (!s.double_points.empty())
        throw parse_error("this command works on plain string links; found " +
                          std::to_string(s.double_points.size()) + " double point(s)");
    return std::move(s.base);
}

inline Rational required_t(const Options& o) {
    if (o.t_text.empty()) throw parse_error("this command requires --t <rational>");
    try {
        return parse_rational(o.t_text);
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("bad --t value: ") + e.what());
    }
}

inline MoveSpec parse_move_spec(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    auto need_int = [&in, &text](const char* what) {
        int v;
        if (!(in >> v)) throw parse_error(std::string("move spec '") + text + "': expected " + what);
        return v;
    };
    auto rest_token = [&in]() {
        std::string t;
        in >> t;
        return t;
    };
    auto done = [&in, &text]() {
        std::string extra;
        if (in >> extra) throw parse_error("move spec '" + text + "': unexpected token '" + extra + "'");
    };
    if (kind == "r1+" || kind == "r1-") {
        int sign = kind == "r1+" ? +1 : -1;
        int strand = need_int("a strand number");
        int pos = need_int("a position");
        std::string order = rest_token();
        bool over_first = sign > 0;
        if (order == "ou") over_first = true;
        else if (order == "uo") over_first = false;
        else if (!order.empty()) throw parse_error("move spec '" + text + "': expected ou or uo");
        done();
        return R1Insert{strand - 1, pos, sign, over_first};
    }
    if (kind == "r1del") {
        int strand = need_int("a strand number");
        int pos = need_int("a position");
        done();
        return R1Delete{strand - 1, pos};
    }
    if (kind == "r2") {
        int os = need_int("an over-strand number");
        int op = need_int("a position");
        int us = need_int("an under-strand number");
        int up = need_int("a position");
        int sign = +1;
        bool anti = false;
        for (std::string tok = rest_token(); !tok.empty(); tok = rest_token()) {
            if (tok == "+") sign = +1;
            else if (tok == "-") sign = -1;
            else if (tok == "par") anti = false;
            else if (tok == "anti") anti = true;
            else throw parse_error("move spec '" + text + "': unexpected token '" + tok + "'");
        }
        return R2Insert{os - 1, op, us - 1, up, sign, anti};
    }
    if (kind == "r2del") {
        int strand = need_int("a strand number");
        int pos = need_int("a position");
        done();
        return R2Delete{strand - 1, pos};
    }
    if (kind == "r3") {
        int strand = need_int("a strand number");
        int pos = need_int("a position");
        done();
        return R3Slide{strand - 1, pos};
    }
    throw parse_error("unknown move kind '" + kind + "' (r1+, r1-, r1del, r2, r2del, r3)");
}

inline void print_exact_or_eval(const Matrix<RatFun>& m, const Options& o, std::ostream& out) {
    if (!o.eval_text.empty()) {
        Rational t0 = parse_rational(o.eval_text);
        Matrix<double> num = m.map([&t0](const RatFun& f) { return to_double(f.eval(t0)); });
        if (o.json) {
            nlohmann::json j{{"n", m.rows()}, {"t", o.eval_text}, {"matrix", matrix_to_json(num)}};
            out << j.dump(2) << "\n";
        } else {
            out << matrix_to_text(num);
        }
        return;
    }
    if (o.json)
        out << matrix_to_json(m).dump(2) << "\n";
    else
        out << matrix_to_text(m);
}

inline void emit_tangle(const StringLinkDiagram& d, const Options& o, std::ostream& out) {
    if (o.json)
        out << nlohmann::json{{"tangle", render_tangle(d)}}.dump(2) << "\n";
    else
        out << render_tangle(d);
}

}  // namespace detail

/// Entry point behind the binary: status 0 on success, 1 on domain errors,
/// 2 on usage or input-format errors. Errors print to `err` only.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact Burau matrices of string links via the walk model, their series "
                 "expansions, finite-type coefficients, and Markov analysis of positive links"};
    app.require_subcommand(1);

    auto add_input = [&o](CLI::App* cmd) {
        cmd->add_option("--file", o.files, "tangle file input");
        cmd->add_option("--braid", o.braids, "braid word input, e.g. \"s1 s2^-1\"");
        cmd->add_option("-n,--strands", o.n, "strand count for braid input");
    };
    auto add_json = [&o](CLI::App* cmd) { cmd->add_flag("--json", o.json, "machine-readable output"); };

    CLI::App* burau = app.add_subcommand("burau", "exact Burau matrix");
    add_input(burau);
    add_json(burau);
    burau->add_option("--eval", o.eval_text, "evaluate entries at t0 (rational)");

    CLI::App* series = app.add_subcommand("series", "Burau matrix as truncated series in h = 1-t");
    add_input(series);
    add_json(series);
    series->add_option("-K,--order", o.order, "truncation order (default 5)");

    CLI::App* compose_cmd = app.add_subcommand("compose", "stack the second input on top of the first");
    add_input(compose_cmd);
    add_json(compose_cmd);

    CLI::App* power_cmd = app.add_subcommand("power", "N-fold self-composition");
    add_input(power_cmd);
    add_json(power_cmd);
    power_cmd->add_option("-N,--exponent", o.exponent, "exponent (default 2)");

    CLI::App* move_cmd = app.add_subcommand("move", "apply a Reidemeister move");
    add_input(move_cmd);
    add_json(move_cmd);
    move_cmd->add_option("--move", o.move_text, "move spec, e.g. \"r1+ 1 0\", \"r2 1 0 2 0 + par\", \"r3 1 0\"")
        ->required();

    CLI::App* mirror_cmd = app.add_subcommand("mirror", "vertical mirror image");
    add_input(mirror_cmd);
    add_json(mirror_cmd);

    CLI::App* vassiliev_cmd = app.add_subcommand("vassiliev", "singular-link value (alternating resolution sum)");
    add_input(vassiliev_cmd);
    add_json(vassiliev_cmd);
    vassiliev_cmd->add_option("--double", o.doubles, "mark crossing as a double point (repeatable)");
    vassiliev_cmd->add_option("--eval", o.eval_text, "evaluate entries at t0 (rational)");

    CLI::App* bk_cmd = app.add_subcommand("bk", "coefficient of h^k of the (singular) Burau matrix");
    add_input(bk_cmd);
    add_json(bk_cmd);
    bk_cmd->add_option("-k", o.k, "coefficient order (default 0)");
    bk_cmd->add_option("--double", o.doubles, "mark crossing as a double point (repeatable)");

    CLI::App* markov_cmd = app.add_subcommand("markov", "stochastic transition matrix of a positive link");
    add_input(markov_cmd);
    add_json(markov_cmd);
    markov_cmd->add_option("--t", o.t_text, "parameter t in (0,1], rational")->required();

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo walk frequencies");
    add_input(simulate_cmd);
    add_json(simulate_cmd);
    simulate_cmd->add_option("--t", o.t_text, "parameter t in (0,1), rational")->required();
    simulate_cmd->add_option("--trials", o.trials, "walks per source (default 100000)");
    simulate_cmd->add_option("--seed", o.seed, "RNG seed (default 1)");

    CLI::App* stationary_cmd = app.add_subcommand("stationary", "stationary distribution of the walk process");
    add_input(stationary_cmd);
    add_json(stationary_cmd);
    stationary_cmd->add_option("--t", o.t_text, "parameter t in (0,1), rational")->required();
    stationary_cmd->add_option("--tol", o.tol, "residual tolerance (default 1e-10)");

    CLI::App* entropy_cmd = app.add_subcommand("entropy", "entropy rate of the walk process, in bits");
    add_input(entropy_cmd);
    add_json(entropy_cmd);
    entropy_cmd->add_option("--t", o.t_text, "parameter t in (0,1], rational")->required();

    CLI::App* persistence_cmd = app.add_subcommand("persistence", "persistence diagnostics");
    add_input(persistence_cmd);
    add_json(persistence_cmd);
    persistence_cmd->add_option("--t", o.t_text, "parameter t in (0,1), rational")->required();
    persistence_cmd->add_option("--nmax", o.nmax, "partial-sum horizon (default 200)");

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a tangle file");
    validate_cmd->add_option("--file", o.files, "tangle file input")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(burau)) {
            detail::print_exact_or_eval(burau_matrix(detail::load_plain(o)), o, out);
        } else if (app.got_subcommand(series)) {
            TruncatedSeriesMatrix m = series_burau(detail::load_plain(o), o.order);
            if (o.json)
                out << matrix_to_json(m).dump(2) << "\n";
            else
                out << matrix_to_text(m);
        } else if (app.got_subcommand(compose_cmd)) {
            auto inputs = detail::load_inputs(o, 2);
            if (!inputs[0].double_points.empty() || !inputs[1].double_points.empty())
                throw parse_error("compose works on plain string links");
            detail::emit_tangle(compose(inputs[0].base, inputs[1].base), o, out);
        } else if (app.got_subcommand(power_cmd)) {
            detail::emit_tangle(power(detail::load_plain(o), o.exponent), o, out);
        } else if (app.got_subcommand(move_cmd)) {
            MoveSpec spec = detail::parse_move_spec(o.move_text);
            detail::emit_tangle(apply_move(detail::load_plain(o), spec), o, out);
        } else if (app.got_subcommand(mirror_cmd)) {
            detail::emit_tangle(mirror_vertical(detail::load_plain(o)), o, out);
        } else if (app.got_subcommand(vassiliev_cmd)) {
            VassilievValue v = vassiliev_value(detail::load_singular(o));
            detail::print_exact_or_eval(*v.exact, o, out);
        } else if (app.got_subcommand(bk_cmd)) {
            SingularStringLink s = detail::load_singular(o);
            Matrix<Rational> m =
                s.double_points.empty() ? bk_coefficient(s.base, o.k) : bk_coefficient(s, o.k);
            if (o.json)
                out << matrix_to_json(m).dump(2) << "\n";
            else
                out << matrix_to_text(m);
        } else if (app.got_subcommand(markov_cmd)) {
            StochasticMatrix sm = evaluate_stochastic(detail::load_plain(o), detail::required_t(o));
            if (o.json) {
                nlohmann::json row_sums = nlohmann::json::array();
                for (std::size_t i = 0; i < sm.p.rows(); ++i) {
                    double s = 0;
                    for (std::size_t j = 0; j < sm.p.cols(); ++j) s += sm.p.at(i, j);
                    row_sums.push_back(s);
                }
                nlohmann::json j{{"n", sm.p.rows()},
                                 {"t", rational_to_string(sm.t_value)},
                                 {"matrix", matrix_to_json(sm.p)},
                                 {"row_sums", row_sums}};
                out << j.dump(2) << "\n";
            } else {
                out << matrix_to_text(sm.p);
                out << "row sums:";
                for (std::size_t i = 0; i < sm.p.rows(); ++i) {
                    double s = 0;
                    for (std::size_t j = 0; j < sm.p.cols(); ++j) s += sm.p.at(i, j);
                    out << " " << format_double(s);
                }
                out << "\n";
            }
        } else if (app.got_subcommand(simulate_cmd)) {
            WalkEstimate est = simulate_walks(detail::load_plain(o), detail::required_t(o), o.trials, o.seed);
            if (o.json) {
                nlohmann::json counts = nlohmann::json::array(), freq = nlohmann::json::array();
                for (std::size_t i = 0; i < est.counts.rows(); ++i) {
                    nlohmann::json crow = nlohmann::json::array(), frow = nlohmann::json::array();
                    for (std::size_t j = 0; j < est.counts.cols(); ++j) {
                        crow.push_back(est.counts.at(i, j));
                        frow.push_back(est.frequency(i, j));
                    }
                    counts.push_back(std::move(crow));
                    freq.push_back(std::move(frow));
                }
                nlohmann::json j{{"n", est.counts.rows()}, {"t", rational_to_string(est.t_value)},
                                 {"trials", est.trials}, {"seed", est.seed},
                                 {"counts", counts},      {"frequencies", freq}};
                out << j.dump(2) << "\n";
            } else {
                Matrix<double> freq(est.counts.rows(), est.counts.cols(), 0.0);
                for (std::size_t i = 0; i < est.counts.rows(); ++i)
                    for (std::size_t j = 0; j < est.counts.cols(); ++j) freq.at(i, j) = est.frequency(i, j);
                out << "trials per source: " << est.trials << "  seed: " << est.seed << "\n";
                out << matrix_to_text(freq);
            }
        } else if (app.got_subcommand(stationary_cmd)) {
            StationaryDistribution dist = stationary(detail::load_plain(o), detail::required_t(o), o.tol);
            if (o.json) {
                nlohmann::json j{{"u", dist.u}, {"iterations", dist.iterations}, {"residual", dist.residual}};
                out << j.dump(2) << "\n";
            } else {
                out << "u:";
                for (double v : dist.u) out << " " << format_double(v);
                out << "\niterations: " << dist.iterations << "\nresidual: " << format_double(dist.residual)
                    << "\n";
            }
        } else if (app.got_subcommand(entropy_cmd)) {
            double h = entropy_rate(detail::load_plain(o), detail::required_t(o));
            if (o.json)
                out << nlohmann::json{{"entropy_bits", h}}.dump(2) << "\n";
            else
                out << format_double(h) << "\n";
        } else if (app.got_subcommand(persistence_cmd)) {
            StringLinkDiagram d = detail::load_plain(o);
            PersistenceReport r = persistence_check(d, detail::required_t(o), o.nmax);
            if (o.json) {
                nlohmann::json diag{{"regular", r.regular},
                                    {"n_max", r.n_max},
                                    {"limit", matrix_to_json(r.limit)},
                                    {"partial_sums", matrix_to_json(r.partial_sums)},
                                    {"slopes", matrix_to_json(r.slopes)}};
                nlohmann::json j{{"matrix", matrix_to_json(evaluate_stochastic(d, r.t_value).p)},
                                 {"u", r.u},
                                 {"entropy", r.entropy_bits ? nlohmann::json(*r.entropy_bits) : nlohmann::json()},
                                 {"N", r.exponent ? nlohmann::json(*r.exponent) : nlohmann::json()},
                                 {"diagnostics", diag}};
                out << j.dump(2) << "\n";
            } else {
                out << "regular: " << (r.regular ? "yes" : "no") << "\n";
                out << "N: " << (r.exponent ? std::to_string(*r.exponent) : "none") << "\n";
                if (r.regular) {
                    out << "u:";
                    for (double v : r.u) out << " " << format_double(v);
                    out << "\nentropy_bits: " << format_double(*r.entropy_bits) << "\n";
                }
                out << "limit (P^" << r.n_max << "):\n" << matrix_to_text(r.limit);
                out << "partial-sum slopes:\n" << matrix_to_text(r.slopes);
            }
        } else if (app.got_subcommand(validate_cmd)) {
            SingularStringLink s = parse_singular_tangle(detail::read_file(o.files.at(0)));
            out << "valid string link: " << s.base.n() << " strand" << (s.base.n() == 1 ? "" : "s") << ", "
                << s.base.crossing_count() << " crossing" << (s.base.crossing_count() == 1 ? "" : "s");
            if (!s.double_points.empty()) out << ", " << s.double_points.size() << " double point(s)";
            out << ", permutation";
            for (int v : s.base.permutation()) out << " " << v;
            out << "\n";
        }
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace strandwalk::cli
