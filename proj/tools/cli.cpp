// SPDX-License-Identifier: Apache-2.0
//
// jacobi-mimo: truncated-unitary MIMO channel analysis library
// Copyright (C) 2026 The jacobi-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "jmimo/analytic.hpp"
#include "jmimo/errors.hpp"
#include "jmimo/feedback.hpp"
#include "jmimo/simulate.hpp"

#ifndef JMIMO_VERSION
#define JMIMO_VERSION "0.0.0"
#endif

namespace jmimo::cli {

namespace {

using json = nlohmann::ordered_json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string cell(double v)
{
    if (!std::isfinite(v))
        throw NumericalError("refusing to write a non-finite value");
    return format_number(v);
}

class Csv {
public:
    explicit Csv(std::vector<std::string> header) : width_(header.size()) { append(header); }

    void row(const std::vector<std::string> &cells)
    {
        if (cells.size() != width_)
            throw std::logic_error("CSV row width mismatch");
        append(cells);
    }

    const std::string &text() const { return text_; }

private:
    void append(const std::vector<std::string> &cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::size_t width_;
    std::string text_;
};

struct Output {
    std::string csv;
    std::optional<std::string> curve_json;
};

struct Options {
    int mt = 0;
    int mr = 0;
    int m = 0;
    std::string m_list;
    std::string mr_list;
    std::string rho_db_grid;
    double rho_db = 10.0;
    std::string r_grid;
    std::string rate_grid;
    std::string eps_grid;
    double r = 1.0;
    std::string method = "analytic";
    std::string outage_method = "mc";
    std::string estimator;
    std::string modulation = "qpsk";
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    int n = 1000;
    int delay = 1;
    int frames = 1;
    bool hold = false;
    bool literal = false;
    bool reuse = false;
    std::string out;
    std::string manifest;
    std::string json_path;
    std::string replay_path;
};

McConfig mc_config(const Options &o)
{
    return {o.trials, o.seed, o.workers};
}

std::vector<int> parse_int_grid(const std::string &text)
{
    std::vector<int> out;
    for (double v : parse_grid(text)) {
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw ContractViolation("expected integers, got " + format_number(v));
        out.push_back(static_cast<int>(v));
    }
    return out;
}

Output cmd_ergodic(const Options &o)
{
    const ChannelDims dims(o.mt, o.mr, o.m);
    Csv csv({"rho_db", "capacity_bits", "capacity_normalized", "stderr"});
    for (double db : parse_grid(o.rho_db_grid)) {
        const double rho = db_to_linear(db);
        const double norm = std::log2(1.0 + rho);
        if (o.method == "analytic") {
            const double c = ergodic_capacity(dims, rho);
            csv.row({cell(db), cell(c), cell(c / norm), ""});
        } else {
            const McEstimate e = mc_ergodic_capacity(dims, rho, mc_config(o));
            csv.row({cell(db), cell(e.value), cell(e.value / norm), cell(e.std_error)});
        }
    }
    return {csv.text(), std::nullopt};
}

Output cmd_outage(const Options &o)
{
    const ChannelDims dims(o.mt, o.mr, o.m);
    const double rho = db_to_linear(o.rho_db);
    const bool by_ratio = !o.r_grid.empty();
    if (by_ratio == !o.rate_grid.empty())
        throw ContractViolation("give exactly one of --r and --rate-bits");
    if (o.outage_method == "analytic" && dims.m_min() != 1)
        throw ContractViolation("the analytic outage method needs mt = 1 or mr = 1");

    Csv csv({by_ratio ? "r" : "rate_bits", "outage", "stderr"});
    for (double v : parse_grid(by_ratio ? o.r_grid : o.rate_grid)) {
        if (v < 0.0)
            throw ContractViolation("rates must be nonnegative");
        const double bits = by_ratio ? v * std::log2(1.0 + rho) : v;
        if (o.outage_method == "analytic") {
            const int other = dims.m_max();
            csv.row({cell(v), cell(outage_single_mode(other, dims.m(), bits, rho)), ""});
        } else {
            const McEstimate e = mc_outage_bits(dims, rho, bits, mc_config(o));
            csv.row({cell(v), cell(e.value), cell(e.std_error)});
        }
    }
    return {csv.text(), std::nullopt};
}

Output cmd_rho_norm(const Options &o)
{
    Csv csv({"m", "mr", "mr_over_m", "epsilon", "rho_norm_db"});
    const std::vector<double> eps = parse_grid(o.eps_grid);
    for (int m : parse_int_grid(o.m_list)) {
        std::vector<int> mrs;
        if (o.mr_list.empty()) {
            for (int mr = 1; mr <= m; ++mr)
                mrs.push_back(mr);
        } else {
            mrs = parse_int_grid(o.mr_list);
        }
        for (int mr : mrs) {
            if (mr < 1 || mr > m)
                throw ContractViolation("mr must satisfy 1 <= mr <= m (got mr=" + std::to_string(mr) +
                                        ", m=" + std::to_string(m) + ")");
            for (double e : eps)
                csv.row({std::to_string(m), std::to_string(mr), cell(double(mr) / m), cell(e),
                         cell(10.0 * std::log10(rho_norm(mr, m, e)))});
        }
    }
    return {csv.text(), std::nullopt};
}

Output cmd_dmt(const Options &o)
{
    const ChannelDims dims(o.mt, o.mr, o.m);
    const DmtCurve curve = dmt_optimal_curve(dims);
    Csv csv({"r", "d"});
    json vertices = json::array();
    for (const DmtVertex &v : curve.vertices) {
        csv.row({cell(v.r), cell(v.d)});
        vertices.push_back({{"r", v.r}, {"d", v.d}});
    }
    json doc = {{"mt", o.mt},
                {"mr", o.mr},
                {"m", o.m},
                {"infinite_below", curve.infinite_below},
                {"vertices", vertices}};
    return {csv.text(), doc.dump(2) + "\n"};
}

Output cmd_repetition(const Options &o)
{
    const ChannelDims dims(o.mt, o.mr, o.m);
    RepetitionMode mode = RepetitionMode::gain_quadrature;
    if (o.estimator == "symbol")
        mode = RepetitionMode::symbol;
    else if (o.estimator == "spectrum")
        mode = RepetitionMode::spectrum_average;
    Csv csv({"rho_db", "error_probability", "stderr"});
    for (double db : parse_grid(o.rho_db_grid)) {
        const McEstimate e = mc_repetition_error(dims, db_to_linear(db), mc_config(o), mode);
        csv.row({cell(db), cell(e.value), cell(e.std_error)});
    }
    return {csv.text(), std::nullopt};
}

Output cmd_alamouti(const Options &o)
{
    const AlamoutiMode mode = o.estimator == "conditional" ? AlamoutiMode::gain_conditional : AlamoutiMode::indicator;
    Csv csv({"m", "rho_db", "r", "outage", "stderr"});
    for (int m : parse_int_grid(o.m_list))
        for (double db : parse_grid(o.rho_db_grid)) {
            const McEstimate e = mc_alamouti_outage(m, db_to_linear(db), o.r, mc_config(o), mode);
            csv.row({std::to_string(m), cell(db), cell(o.r), cell(e.value), cell(e.std_error)});
        }
    return {csv.text(), std::nullopt};
}

Output cmd_feedback(const Options &o)
{
    SchemeConfig cfg;
    cfg.dims = ChannelDims(o.mt, o.mr, o.m);
    if (cfg.dims.k() < 1)
        throw ContractViolation("feedback needs mt + mr > m so that at least one stream is unfaded (got " +
                                cfg.dims.to_string() + ")");
    cfg.n = o.n;
    cfg.delay_l = o.delay;
    cfg.rho = db_to_linear(o.rho_db);
    cfg.modulation = o.modulation == "gaussian" ? Modulation::gaussian : Modulation::qpsk;
    cfg.seed = o.seed;
    cfg.frames = o.frames;
    cfg.hold_channel = o.hold;
    cfg.equalize_relay_power = !o.literal;
    cfg.whiten_side_info = !o.literal;
    cfg.reuse_idle_slots = o.reuse;
    const SchemeReport rep = run_feedback_scheme(cfg);

    auto [smin, smax] = std::minmax_element(rep.per_stream_snr.begin(), rep.per_stream_snr.end());
    auto [pmin, pmax] = std::minmax_element(rep.mode_power.begin(), rep.mode_power.end());
    const double mi_min =
        *std::min_element(rep.frame_mutual_information.begin(), rep.frame_mutual_information.end());
    Csv csv({"k", "n", "delay", "rho_db", "frames", "overhead_uses", "achieved_rate_bits", "min_frame_mi_bits",
             "snr_min", "snr_max", "noise_cov_error", "ber", "mode_power_min", "mode_power_max",
             "first_use_relay_power", "max_combining_error"});
    csv.row({std::to_string(cfg.dims.k()), std::to_string(cfg.n), std::to_string(cfg.delay_l), cell(o.rho_db),
             std::to_string(cfg.frames), std::to_string(rep.overhead_uses), cell(rep.achieved_rate), cell(mi_min),
             cell(*smin), cell(*smax), cell(rep.noise_cov_error), rep.ber ? cell(*rep.ber) : std::string(),
             cell(*pmin), cell(*pmax), cell(rep.first_use_relay_power), cell(rep.max_combining_error)});
    return {csv.text(), std::nullopt};
}

Output cmd_rayleigh(const Options &o)
{
    const std::vector<int> ms = parse_int_grid(o.m_list);
    Csv csv({"rho_bar_db", "m", "capacity_jacobi_bits", "capacity_rayleigh_bits", "capacity_rayleigh_stderr",
             "gap_db", "outage_jacobi", "outage_jacobi_stderr", "outage_rayleigh", "outage_rayleigh_stderr",
             "ks_distance", "mean_frobenius", "expected_frobenius"});
    for (double db : parse_grid(o.rho_db_grid))
        for (const RayleighRow &row : rayleigh_compare(o.mt, o.mr, ms, db_to_linear(db), mc_config(o), o.r))
            csv.row({cell(db), std::to_string(row.m), cell(row.capacity_jacobi), cell(row.capacity_rayleigh.value),
                     cell(row.capacity_rayleigh.std_error), cell(row.gap_db), cell(row.outage_jacobi.value),
                     cell(row.outage_jacobi.std_error), cell(row.outage_rayleigh.value),
                     cell(row.outage_rayleigh.std_error), cell(row.ks_distance), cell(row.mean_frobenius.value),
                     cell(row.expected_frobenius)});
    return {csv.text(), std::nullopt};
}

void write_file(const std::string &path, const std::string &data)
{
    std::ofstream f(path, std::ios::binary);
    f << data;
    if (!f)
        throw std::runtime_error("cannot write " + path);
}

std::string read_file(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ContractViolation("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Arguments that only choose where artifacts go; dropped from manifests.
std::vector<std::string> strip_output_args(const std::vector<std::string> &args)
{
    static const std::vector<std::string> names = {"--out", "--manifest", "--json"};
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        bool drop = false;
        for (const std::string &n : names) {
            if (args[i] == n) {
                drop = true;
                ++i;
                break;
            }
            if (args[i].rfind(n + "=", 0) == 0) {
                drop = true;
                break;
            }
        }
        if (!drop)
            kept.push_back(args[i]);
    }
    return kept;
}

void add_dims(CLI::App *sub, Options &o)
{
    sub->add_option("--mt", o.mt, "transmit modes m_t")->required()->check(CLI::PositiveNumber);
    sub->add_option("--mr", o.mr, "receive modes m_r")->required()->check(CLI::PositiveNumber);
    sub->add_option("--m", o.m, "total modes m of the unitary")->required()->check(CLI::PositiveNumber);
}

void add_mc(CLI::App *sub, Options &o)
{
    sub->add_option("--trials", o.trials, "Monte-Carlo trials per point")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "master seed (64-bit integer)");
    sub->add_option("--workers", o.workers, "worker threads; changes wall time only")->check(CLI::PositiveNumber);
}

// Deterministic commands take --seed so every subcommand shares one calling convention.
void add_seed_only(CLI::App *sub, Options &o)
{
    sub->add_option("--seed", o.seed, "master seed; recorded in the manifest, the result is deterministic");
}

void add_outputs(CLI::App *sub, Options &o)
{
    sub->add_option("--out", o.out, "CSV output path (default: stdout)");
    sub->add_option("--manifest", o.manifest, "write a JSON run manifest to this path");
}

struct Parsed {
    std::string subcommand;
    json parameters;
    Output output;
};

using Handler = std::function<Output(const Options &)>;

struct Registry {
    CLI::App app{"Truncated-unitary (Jacobi) MIMO channel analysis", "jmimo"};
    Options o;
    std::vector<std::pair<CLI::App *, Handler>> subs;
};

void build(Registry &reg)
{
    CLI::App &app = reg.app;
    Options &o = reg.o;
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(JMIMO_VERSION));

    auto *ergodic = app.add_subcommand("ergodic", "ergodic capacity in bits per channel use versus rho (dB)");
    add_dims(ergodic, o);
    ergodic->add_option("--rho-db", o.rho_db_grid, "per-mode SNR grid in dB, start:stop:step or a,b,c")->required();
    ergodic->add_option("--method", o.method, "analytic or mc")->check(CLI::IsMember({"analytic", "mc"}));
    add_mc(ergodic, o);
    add_outputs(ergodic, o);
    reg.subs.emplace_back(ergodic, cmd_ergodic);

    auto *outage = app.add_subcommand("outage", "outage probability versus rate at a fixed rho (dB)");
    add_dims(outage, o);
    outage->add_option("--rho-db", o.rho_db, "per-mode SNR in dB")->required();
    auto *r_opt = outage->add_option("--r", o.r_grid, "multiplexing ratio grid r; rate = r log2(1 + rho) bits");
    auto *b_opt = outage->add_option("--rate-bits", o.rate_grid, "absolute rate grid in bits per channel use");
    r_opt->excludes(b_opt);
    outage->add_option("--method", o.outage_method, "mc, or analytic when mt = 1 or mr = 1")
        ->check(CLI::IsMember({"analytic", "mc"}));
    add_mc(outage, o);
    add_outputs(outage, o);
    reg.subs.emplace_back(outage, cmd_outage);

    auto *rn = app.add_subcommand("rho-norm", "rho_norm in dB: minimal rho/(2^R - 1) for outage below epsilon");
    rn->add_option("--m", o.m_list, "total modes m, list or grid")->required();
    rn->add_option("--mr", o.mr_list, "receive modes list (default: 1..m)");
    rn->add_option("--epsilon", o.eps_grid, "target outage probabilities (linear), list")->required();
    add_seed_only(rn, o);
    add_outputs(rn, o);
    reg.subs.emplace_back(rn, cmd_rho_norm);

    auto *dmt = app.add_subcommand("dmt", "optimal diversity-multiplexing curve; CSV vertices r,d");
    add_dims(dmt, o);
    dmt->add_option("--json", o.json_path, "also write the curve with its infinite_below threshold as JSON");
    add_seed_only(dmt, o);
    add_outputs(dmt, o);
    reg.subs.emplace_back(dmt, cmd_dmt);

    auto *rep = app.add_subcommand("repetition", "QPSK symbol error probability of the repetition scheme vs rho (dB)");
    add_dims(rep, o);
    rep->add_option("--rho-db", o.rho_db_grid, "per-mode SNR grid in dB")->required();
    rep->add_option("--estimator", o.estimator, "symbol (count errors), spectrum, or gain (conditional quadrature)")
        ->check(CLI::IsMember({"symbol", "spectrum", "gain"}))
        ->default_str("gain");
    add_mc(rep, o);
    add_outputs(rep, o);
    reg.subs.emplace_back(rep, cmd_repetition);

    auto *ala = app.add_subcommand("alamouti", "2x2 Alamouti outage P[log2(1 + rho ||H11||^2) < r log2 rho]");
    ala->add_option("--m", o.m_list, "total modes m >= 2, list or grid")->required();
    ala->add_option("--rho-db", o.rho_db_grid, "per-mode SNR grid in dB")->required();
    ala->add_option("--r", o.r, "multiplexing ratio r (rate r log2 rho bits)");
    ala->add_option("--estimator", o.estimator, "indicator or conditional")
        ->check(CLI::IsMember({"indicator", "conditional"}))
        ->default_str("indicator");
    add_mc(ala, o);
    add_outputs(ala, o);
    reg.subs.emplace_back(ala, cmd_alamouti);

    auto *fb = app.add_subcommand("feedback", "delayed-feedback zero-outage scheme; SNRs linear, rates in bits per use");
    add_dims(fb, o);
    fb->add_option("--n", o.n, "channel uses per frame")->check(CLI::PositiveNumber);
    fb->add_option("--delay", o.delay, "feedback delay l in channel uses")->check(CLI::PositiveNumber);
    fb->add_option("--rho-db", o.rho_db, "per-mode SNR in dB");
    fb->add_option("--modulation", o.modulation, "qpsk or gaussian")->check(CLI::IsMember({"qpsk", "gaussian"}));
    fb->add_option("--frames", o.frames, "independent frames")->check(CLI::PositiveNumber);
    fb->add_option("--seed", o.seed, "master seed (64-bit integer)");
    fb->add_flag("--hold-channel", o.hold, "one channel draw per frame");
    fb->add_flag("--literal", o.literal, "no relay power equalization and no side-information whitening");
    fb->add_flag("--reuse-idle-slots", o.reuse, "send new symbols in relay slots that carry nothing");
    add_outputs(fb, o);
    reg.subs.emplace_back(fb, cmd_feedback);

    auto *ray = app.add_subcommand("rayleigh", "Jacobi vs i.i.d. Rayleigh on the rho_bar (dB) axis; capacities in bits");
    ray->add_option("--mt", o.mt, "transmit modes m_t")->required()->check(CLI::PositiveNumber);
    ray->add_option("--mr", o.mr, "receive modes m_r")->required()->check(CLI::PositiveNumber);
    ray->add_option("--m", o.m_list, "total modes list, each >= mt + mr")->required();
    ray->add_option("--rho-bar-db", o.rho_db_grid, "average SNR per receive mode, grid in dB")->required();
    ray->add_option("--r", o.r, "outage rate r log2(1 + rho_bar) bits");
    add_mc(ray, o);
    add_outputs(ray, o);
    reg.subs.emplace_back(ray, cmd_rayleigh);

    auto *replay = app.add_subcommand("replay", "re-run a manifest and check the output checksum");
    replay->add_option("manifest", o.replay_path, "manifest JSON path")->required();
    replay->add_option("--out", o.out, "CSV output path (default: stdout)");
}

json collect_parameters(CLI::App *sub)
{
    json params = json::object();
    for (const CLI::Option *opt : sub->get_options()) {
        if (opt->get_lnames().empty())
            continue;
        const std::string &name = opt->get_lnames().front();
        if (name == "help" || name == "out" || name == "manifest" || name == "json")
            continue;
        std::string value = opt->get_default_str();
        if (opt->count() > 0) {
            value.clear();
            for (const std::string &r : opt->results())
                value += (value.empty() ? "" : " ") + r;
        }
        params[name] = value;
    }
    return params;
}

// Parses and runs one analysis command; replay is handled by the caller.
int execute(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, Registry &reg,
            std::optional<Parsed> &result)
{
    std::vector<const char *> argv{"jmimo"};
    for (const std::string &a : args)
        argv.push_back(a.c_str());
    try {
        reg.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return reg.app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return reg.app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return reg.app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        reg.app.exit(e, out, err);
        return kExitUsage;
    }
    for (auto &[sub, handler] : reg.subs) {
        if (!sub->parsed())
            continue;
        result = Parsed{sub->get_name(), collect_parameters(sub), handler(reg.o)};
        return kExitOk;
    }
    return kExitOk; // replay
}

int run_replay(const Options &o, std::ostream &out, std::ostream &err)
{
    const json manifest = json::parse(read_file(o.replay_path));
    const auto args = manifest.at("args").get<std::vector<std::string>>();
    if (!args.empty() && args.front() == "replay")
        throw ContractViolation("a manifest cannot replay another replay");
    Registry inner;
    build(inner);
    std::optional<Parsed> parsed;
    std::ostringstream sink;
    const int code = execute(args, sink, err, inner, parsed);
    if (code != kExitOk || !parsed)
        return code == kExitOk ? kExitUsage : code;
    if (o.out.empty())
        out << parsed->output.csv;
    else
        write_file(o.out, parsed->output.csv);
    const std::string expected = manifest.at("output_sha256").get<std::string>();
    if (sha256_hex(parsed->output.csv) != expected) {
        err << "replay mismatch: output checksum differs from the manifest\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace

std::vector<double> parse_grid(const std::string &text)
{
    auto to_double = [&](const std::string &s) {
        double v = 0.0;
        const char *first = s.data();
        const char *last = s.data() + s.size();
        while (first < last && *first == ' ')
            ++first;
        if (first < last && *first == '+')
            ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
            throw ContractViolation("cannot parse '" + s + "' as a number in grid '" + text + "'");
        return v;
    };
    if (text.empty())
        throw ContractViolation("empty grid");
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() != 3)
            throw ContractViolation("grid must be start:stop:step, got '" + text + "'");
        const double a = to_double(parts[0]);
        const double b = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (!(step > 0.0) || b < a)
            throw ContractViolation("grid needs step > 0 and stop >= start, got '" + text + "'");
        const auto count = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9));
        if (count > 1000000)
            throw ContractViolation("grid has too many points: '" + text + "'");
        for (std::int64_t i = 0; i <= count; ++i)
            out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
        out.push_back(to_double(p));
    return out;
}

std::string format_number(double v)
{
    if (v == 0.0)
        return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

std::string sha256_hex(const std::string &data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i)
        ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return ss.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    try {
        Registry reg;
        build(reg);
        std::optional<Parsed> parsed;
        const int code = execute(args, out, err, reg, parsed);
        if (code != kExitOk)
            return code;
        if (!parsed) {
            if (!reg.o.replay_path.empty())
                return run_replay(reg.o, out, err);
            return kExitOk; // help or version
        }
        const Output &res = parsed->output;
        if (reg.o.out.empty())
            out << res.csv;
        else
            write_file(reg.o.out, res.csv);
        if (res.curve_json && !reg.o.json_path.empty())
            write_file(reg.o.json_path, *res.curve_json);
        if (!reg.o.manifest.empty()) {
            json m = {{"tool", "jmimo"},
                      {"version", JMIMO_VERSION},
                      {"subcommand", parsed->subcommand},
                      {"args", strip_output_args(args)},
                      {"parameters", parsed->parameters},
                      {"master_seed", reg.o.seed},
                      {"timestamp", utc_timestamp()},
                      {"output_sha256", sha256_hex(res.csv)}};
            write_file(reg.o.manifest, m.dump(2) + "\n");
        }
        return kExitOk;
    } catch (const ContractViolation &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception &e) {
        err << "usage error: bad manifest: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace jmimo::cli
