// cli.hpp - run configuration, scenario execution and CSV output for the `raman` tool

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "raman/analysis.hpp"
#include "raman/lippmann_schwinger.hpp"
#include "raman/model.hpp"
#include "raman/propagators.hpp"

namespace raman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr std::string_view kTraceHeader = "t,dt_times_Delta,p0,p1,pe,norm,method";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { Evolve, Compare, Sweep, Fidelity, Figure };

struct RunConfig {
    Scenario scenario{Scenario::Evolve};
    RamanParams params{};
    std::vector<Method> methods;
    StateVec3 psi0 = StateVec3::ground();
    double t_end{};                  // us; 0 means scenario default
    std::size_t intervals{};         // 0 means automatic
    std::vector<std::string> notices;

    // sweep
    std::string axis;
    double from{}, to{};
    std::size_t points{};
    std::vector<std::string> observables;

    // figure
    std::string figure_id;

    std::string out_path;  // empty: stdout (figure: fig<id>.csv)
};

// ---------------------------------------------------------------------------
// Literal parsing

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Accepts "a", "a+bi", "a-bi", "bi", "i", "-i" (j allowed for i).
inline std::optional<Complex> parse_complex(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i' && s.back() != 'j') {
        const auto re = parse_real(s);
        if (!re) return std::nullopt;
        return Complex{*re, 0.0};
    }
    std::string_view body = s.substr(0, s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](std::string_view t) -> std::optional<double> {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string_view::npos) {
        const auto im = imag_of(body);
        if (!im) return std::nullopt;
        return Complex{0.0, *im};
    }
    const auto re = parse_real(body.substr(0, split));
    const auto im = imag_of(body.substr(split));
    if (!re || !im) return std::nullopt;
    return Complex{*re, *im};
}

inline std::vector<std::string> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t pos = s.find(sep, start);
        const std::string_view item = trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
        if (!item.empty()) out.emplace_back(item);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figure presets

struct FigurePreset {
    std::string id;
    RamanParams params;
    std::vector<Method> methods;
    double dt_end{};  // Delta * t_end
};

inline RamanParams fig4_params() { return {400.0, -16.0, 200.0, 120.0}; }

inline std::optional<FigurePreset> figure_preset(std::string_view id) {
    const Method exact{Method::Kind::ExactNew};
    auto fig3 = [&](std::string name, double o0, double o1) {
        FigurePreset f{std::move(name), {400.0, 0.0, o0, o1}, {exact, Method{Method::Kind::AE}}, 0.0};
        f.dt_end = 400.0 * 2.0 * kPi / rabi_exact_delta0(f.params);
        return f;
    };
    if (id == "3a") return fig3("3a", 40.0, 40.0);
    if (id == "3b") return fig3("3b", 40.0, 25.0);
    if (id == "3c") return fig3("3c", 100.0, 100.0);
    if (id == "4" || id == "4a" || id == "4b") {
        const Variant v = id == "4b" ? Variant::L : Variant::R;
        return FigurePreset{id == "4b" ? "4b" : "4a", fig4_params(),
                            {exact, Method::ls(v, 0), Method::ls(v, 1), Method::ls(v, 2)}, 100.0};
    }
    if (id == "5")
        return FigurePreset{"5", fig4_params(),
                            {exact, Method::ls(Variant::R, 0), Method::ls(Variant::L, 0), Method::ls(Variant::S, 0),
                             Method::ls(Variant::S, 1), Method::ls(Variant::S, 2)},
                            100.0};
    if (id == "6")
        return FigurePreset{"6", fig4_params(),
                            {exact, Method::ls(Variant::S, 0), Method{Method::Kind::AE}, Method{Method::Kind::M0Eff}},
                            100.0};
    if (id == "2") return FigurePreset{"2", {400.0, 0.0, 40.0, 40.0}, {exact}, 0.0};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// parse_config

namespace detail {

inline std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string_view body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value', got '" +
                             std::string(body) + "'");
        const std::string key(trim(body.substr(0, eq)));
        const std::string value(trim(body.substr(eq + 1)));
        if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

inline double require_real(const std::map<std::string, std::string>& v, const std::string& key) {
    const auto it = v.find(key);
    if (it == v.end()) throw UsageError("missing required option --" + key);
    const auto x = parse_real(it->second);
    if (!x) throw UsageError("malformed number for --" + key + ": '" + it->second + "'");
    return *x;
}

inline Complex require_complex(const std::map<std::string, std::string>& v, const std::string& key) {
    const auto it = v.find(key);
    if (it == v.end()) throw UsageError("missing required option --" + key);
    const auto x = parse_complex(it->second);
    if (!x) throw UsageError("malformed complex literal for --" + key + ": '" + it->second + "'");
    return *x;
}

inline std::optional<double> optional_real(const std::map<std::string, std::string>& v, const std::string& key) {
    if (!v.count(key)) return std::nullopt;
    return require_real(v, key);
}

inline std::size_t require_count(const std::map<std::string, std::string>& v, const std::string& key) {
    const double x = require_real(v, key);
    if (x < 1.0 || x != std::floor(x) || x > 1e8)
        throw UsageError("--" + key + " must be a positive integer, got '" + v.at(key) + "'");
    return static_cast<std::size_t>(x);
}

}  // namespace detail

inline std::string usage_text() {
    return "usage: raman <evolve|compare|sweep|fidelity|figure> [options]\n"
           "  --delta-avg D --delta d --omega0 A --omega1 B   parameters (rad/us; complex a+bi allowed)\n"
           "  --t-end T | --dt-end X    time extent in us, or dimensionless Delta*t\n"
           "  --points N                grid nodes (sweep: sample count)\n"
           "  --method LIST             exact-ae,exact-new,ode,ae,delta0,m0eff,ls-R,ls-L,ls-S,ls-M\n"
           "  --order K                 order of ls-* methods\n"
           "  --psi0 c0,c1,ce           initial amplitudes (normalized on input)\n"
           "  --axis delta|delta-avg|omega0|omega1 --from A --to B --observable LIST   (sweep)\n"
           "  --id 2|3a|3b|3c|4a|4b|5|6 (figure)\n"
           "  --out PATH --config FILE\n";
}

// args excludes the program name. Flags override keys read from --config.
inline RunConfig parse_config(std::vector<std::string> args) {
    if (args.empty()) throw UsageError("missing scenario");

    // splice config-file keys in right after the scenario name
    for (std::size_t i = 1; i < args.size(); ++i) {
        std::string path;
        std::size_t erase = 0;
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            path = args[i + 1];
            erase = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            erase = 1;
        } else {
            continue;
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + erase));
        const auto tokens = detail::read_config_file(path);
        args.insert(args.begin() + 1, tokens.begin(), tokens.end());
        break;
    }

    CLI::App app{"Three-level Raman transition simulator", "raman"};
    app.require_subcommand(1);
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> opts;

    const std::vector<std::string> common = {"delta-avg", "delta", "omega0", "omega1", "t-end", "dt-end",
                                             "points",    "method", "order", "psi0",   "out"};
    const std::vector<std::string> sweep_only = {"axis", "from", "to", "observable"};

    std::map<std::string, CLI::App*> subs;
    for (const char* name : {"evolve", "compare", "sweep", "fidelity", "figure"}) {
        CLI::App* sub = app.add_subcommand(name);
        subs[name] = sub;
        std::vector<std::string> keys;
        if (std::string_view(name) == "figure") {
            keys = {"id", "out"};
        } else {
            keys = common;
            if (std::string_view(name) == "sweep") keys.insert(keys.end(), sweep_only.begin(), sweep_only.end());
        }
        for (const auto& key : keys) {
            auto* o = sub->add_option("--" + key, values[key]);
            o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
            o->allow_extra_args(false);
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    // drop keys that were never given
    std::map<std::string, std::string> given;
    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        for (auto* o : sub->get_options()) {
            if (o->count() == 0) continue;
            std::string key = o->get_name();
            while (!key.empty() && key.front() == '-') key.erase(key.begin());
            given[key] = values[key];
        }
    }

    RunConfig cfg;
    const std::string scenario = args.front();
    if (scenario == "evolve") cfg.scenario = Scenario::Evolve;
    else if (scenario == "compare") cfg.scenario = Scenario::Compare;
    else if (scenario == "sweep") cfg.scenario = Scenario::Sweep;
    else if (scenario == "fidelity") cfg.scenario = Scenario::Fidelity;
    else cfg.scenario = Scenario::Figure;

    if (given.count("out")) cfg.out_path = given["out"];

    if (cfg.scenario == Scenario::Figure) {
        if (!given.count("id")) throw UsageError("missing required option --id");
        const auto preset = figure_preset(given["id"]);
        if (!preset) throw UsageError("unknown figure id '" + given["id"] + "'");
        cfg.figure_id = preset->id;
        cfg.params = preset->params;
        cfg.methods = preset->methods;
        cfg.t_end = preset->dt_end / preset->params.delta_avg;
        return cfg;
    }

    if (scenario == "sweep") {
        // a sweep only needs the fixed parameters it does not scan
        const RamanParams base = fig4_params();
        std::vector<std::string> defaulted;
        for (const auto& [key, value] : std::map<std::string, double>{
                 {"delta-avg", base.delta_avg}, {"omega0", base.omega0.real()}, {"omega1", base.omega1.real()}}) {
            if (given.count(key)) continue;
            std::ostringstream os;
            os << value;
            given[key] = os.str();
            defaulted.push_back("--" + key + " " + os.str());
        }
        if (!defaulted.empty()) {
            std::string note = "sweep defaults:";
            for (const auto& d : defaulted) note += " " + d;
            cfg.notices.push_back(note);
        }
    }

    cfg.params.delta_avg = detail::require_real(given, "delta-avg");
    if (cfg.params.delta_avg == 0.0) throw UsageError("--delta-avg must be nonzero");
    cfg.params.delta_2ph = detail::optional_real(given, "delta").value_or(0.0);
    cfg.params.omega0 = detail::require_complex(given, "omega0");
    cfg.params.omega1 = detail::require_complex(given, "omega1");

    const auto t_end = detail::optional_real(given, "t-end");
    const auto dt_end = detail::optional_real(given, "dt-end");
    if (t_end && dt_end) throw UsageError("give either --t-end or --dt-end, not both");
    if (t_end) cfg.t_end = *t_end;
    if (dt_end) cfg.t_end = *dt_end / cfg.params.delta_avg;
    if (cfg.t_end < 0.0 || ((t_end || dt_end) && cfg.t_end == 0.0))
        throw UsageError("time extent must be positive");

    int order = 0;
    if (given.count("order")) {
        const double k = detail::require_real(given, "order");
        if (k < 0 || k != std::floor(k) || k > 16) throw UsageError("--order must be a small non-negative integer");
        order = static_cast<int>(k);
    }

    if (given.count("method")) {
        for (const auto& name : split_list(given["method"])) {
            const auto m = Method::parse(name, order);
            if (!m) throw UsageError("unknown method '" + name + "'");
            cfg.methods.push_back(*m);
        }
        if (cfg.methods.empty()) throw UsageError("--method list is empty");
    }

    if (given.count("psi0")) {
        const auto parts = split_list(given["psi0"]);
        if (parts.size() != 3) throw UsageError("--psi0 needs three comma-separated amplitudes, got '" + given["psi0"] + "'");
        CVec<3> v{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto z = parse_complex(parts[i]);
            if (!z) throw UsageError("malformed complex literal in --psi0: '" + parts[i] + "'");
            v[i] = *z;
        }
        if (norm(v) == 0.0) throw UsageError("--psi0 must not be the zero vector");
        cfg.psi0 = StateVec3::from(v).normalized();
    }

    if (cfg.scenario == Scenario::Sweep) {
        if (!given.count("axis")) throw UsageError("missing required option --axis");
        cfg.axis = given["axis"];
        if (cfg.axis != "delta" && cfg.axis != "delta-avg" && cfg.axis != "omega0" && cfg.axis != "omega1")
            throw UsageError("unknown sweep axis '" + cfg.axis + "'");
        cfg.from = detail::require_real(given, "from");
        cfg.to = detail::require_real(given, "to");
        cfg.points = detail::require_count(given, "points");
        cfg.observables = split_list(given.count("observable") ? given["observable"] : "rabi,amplitude");
        for (const auto& o : cfg.observables)
            if (o != "rabi" && o != "rabi-ae" && o != "amplitude" && o != "gap" && o != "delta-ae")
                throw UsageError("unknown observable '" + o + "'");
        return cfg;
    }

    if (cfg.scenario == Scenario::Evolve || cfg.scenario == Scenario::Compare) {
        if (cfg.t_end == 0.0) throw UsageError("missing required option --t-end (or --dt-end)");
        if (cfg.methods.empty()) {
            if (cfg.scenario == Scenario::Evolve) cfg.methods = {Method{Method::Kind::ExactNew}};
            else
                cfg.methods = {Method{Method::Kind::AE}, Method{Method::Kind::M0Eff},
                               Method::ls(Variant::S, order)};
        }
    }

    if (given.count("points")) {
        const std::size_t pts = detail::require_count(given, "points");
        if (pts < 2) throw UsageError("--points must be at least 2");
        cfg.intervals = pts - 1;
    }

    // grid density
    if (cfg.scenario == Scenario::Evolve || cfg.scenario == Scenario::Compare) {
        const std::size_t need = required_intervals(spectral_m0sq(cfg.params), cfg.t_end);
        if (cfg.intervals == 0) {
            cfg.intervals = need;
        } else {
            cfg.intervals += cfg.intervals % 2;
            const bool has_ls = std::any_of(cfg.methods.begin(), cfg.methods.end(),
                                            [](const Method& m) { return m.kind == Method::Kind::LS; });
            if (has_ls && cfg.intervals < need) {
                cfg.notices.push_back("grid raised from " + std::to_string(cfg.intervals) + " to " +
                                      std::to_string(need) + " intervals to meet dt*mu_max <= pi/20");
                cfg.intervals = need;
            }
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// execution

struct OutputFile {
    std::string path;  // empty: stdout
    std::string content;
};

namespace detail {

inline std::ostringstream csv_stream() {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    return os;
}

inline void write_trace_rows(std::ostringstream& os, const Trace& tr, double delta_avg) {
    for (std::size_t i = 0; i < tr.size(); ++i) {
        os << tr.times[i] << ',' << tr.times[i] * delta_avg << ',' << tr.p0[i] << ',' << tr.p1[i] << ','
           << tr.pe[i] << ',' << tr.norm[i] << ',' << tr.label << '\n';
    }
}

inline std::string traces_csv(const RamanParams& p, const std::vector<Method>& methods, const StateVec3& psi0,
                              const TimeGrid& grid) {
    auto os = csv_stream();
    os << kTraceHeader << '\n';
    for (const auto& m : methods) {
        try {
            write_trace_rows(os, trace_populations(m, p, psi0, grid), p.delta_avg);
        } catch (const std::exception& e) {
            throw NumericalError("method " + m.label() + ": " + e.what());
        }
    }
    return os.str();
}

inline std::string compare_csv(const RunConfig& cfg, const TimeGrid& grid) {
    const Trace ref = trace_populations(Method{Method::Kind::ExactNew}, cfg.params, cfg.psi0, grid);
    auto os = csv_stream();
    os << "t,dt_times_Delta,method,err_p0,err_p1,err_pe\n";
    for (const auto& m : cfg.methods) {
        Trace tr;
        try {
            tr = trace_populations(m, cfg.params, cfg.psi0, grid);
        } catch (const std::exception& e) {
            throw NumericalError("method " + m.label() + ": " + e.what());
        }
        for (std::size_t i = 0; i < tr.size(); ++i) {
            os << tr.times[i] << ',' << tr.times[i] * cfg.params.delta_avg << ',' << tr.label << ','
               << tr.p0[i] - ref.p0[i] << ',' << tr.p1[i] - ref.p1[i] << ',' << tr.pe[i] - ref.pe[i] << '\n';
        }
    }
    return os.str();
}

inline double observable(const std::string& name, const RamanParams& p) {
    if (name == "rabi") return rabi_general(p);
    if (name == "rabi-ae") return rabi_ae(p);
    if (name == "amplitude") return amplitude_p(p);
    if (name == "delta-ae") return delta_resonant_ae(p);
    const SpectralData s = spectral_m0sq(p);
    return s.mu_plus_sq - s.mu_minus_sq;  // gap
}

inline std::string sweep_csv(const RunConfig& cfg) {
    auto os = csv_stream();
    os << cfg.axis;
    for (const auto& o : cfg.observables) os << ',' << o;
    os << '\n';
    for (std::size_t i = 0; i < cfg.points; ++i) {
        const double x = cfg.points == 1 ? cfg.from
                                         : cfg.from + (cfg.to - cfg.from) * static_cast<double>(i) /
                                                          static_cast<double>(cfg.points - 1);
        RamanParams p = cfg.params;
        if (cfg.axis == "delta") p.delta_2ph = x;
        else if (cfg.axis == "delta-avg") p.delta_avg = x;
        else if (cfg.axis == "omega0") p.omega0 = x;
        else p.omega1 = x;
        os << x;
        for (const auto& o : cfg.observables) {
            try {
                os << ',' << observable(o, p);
            } catch (const std::exception& e) {
                std::ostringstream where;
                where << "sweep " << cfg.axis << " = " << x << ", observable " << o << ": " << e.what();
                throw NumericalError(where.str());
            }
        }
        os << '\n';
    }
    return os.str();
}

// Fidelity between exact evolutions at the AE resonance detuning and at the
// light-shift-corrected detuning. Time axis in units of the AE Rabi frequency.
struct FidelityCurve {
    double delta_ae{}, delta_ls{}, omega_r{};
    std::vector<double> times, fidelity;
};

inline FidelityCurve fidelity_curve(const RamanParams& base, const StateVec3& psi0, double t_end,
                                    std::size_t intervals) {
    FidelityCurve c;
    c.delta_ae = delta_resonant_ae(base);
    c.delta_ls = delta_resonant_lightshift(base).approx;
    const RamanParams pa = base.with_delta(c.delta_ae);
    const RamanParams pb = base.with_delta(c.delta_ls);
    c.omega_r = rabi_ae(pa);
    if (t_end <= 0.0) {
        if (c.omega_r == 0.0) throw NumericalError("fidelity: AE Rabi frequency vanishes; give --t-end");
        t_end = 7.0 / c.omega_r;
    }
    if (intervals == 0) intervals = 700;
    const TimeGrid grid(t_end, intervals + intervals % 2);
    const ExactPropagator ua(h_new(pa)), ub(h_new(pb));
    for (double t : grid.times()) {
        c.times.push_back(t);
        c.fidelity.push_back(fidelity(ua(t) * psi0, ub(t) * psi0));
    }
    return c;
}

inline std::string fidelity_csv(const RunConfig& cfg) {
    const auto c = fidelity_curve(cfg.params, cfg.psi0, cfg.t_end, cfg.intervals);
    auto os = csv_stream();
    os << "t,omega_r_t,delta_eq_ae,delta_eq_lightshift,fidelity\n";
    for (std::size_t i = 0; i < c.times.size(); ++i)
        os << c.times[i] << ',' << c.omega_r * c.times[i] << ',' << c.delta_ae << ',' << c.delta_ls << ','
           << c.fidelity[i] << '\n';
    return os.str();
}

inline std::string figure2_csv() {
    auto os = csv_stream();
    os << "ratio,t,omega_r_t,fidelity\n";
    for (double ratio : {1.0, 3.0, 5.0}) {
        const RamanParams p{400.0, 0.0, ratio * 40.0, 40.0};
        const auto c = fidelity_curve(p, StateVec3::ground(), 0.0, 700);
        for (std::size_t i = 0; i < c.times.size(); ++i)
            os << ratio << ',' << c.times[i] << ',' << c.omega_r * c.times[i] << ',' << c.fidelity[i] << '\n';
    }
    return os.str();
}

}  // namespace detail

inline std::vector<OutputFile> execute(const RunConfig& cfg) {
    switch (cfg.scenario) {
        case Scenario::Evolve: {
            const TimeGrid grid(cfg.t_end, cfg.intervals);
            return {{cfg.out_path, detail::traces_csv(cfg.params, cfg.methods, cfg.psi0, grid)}};
        }
        case Scenario::Compare: {
            const TimeGrid grid(cfg.t_end, cfg.intervals);
            return {{cfg.out_path, detail::compare_csv(cfg, grid)}};
        }
        case Scenario::Sweep: return {{cfg.out_path, detail::sweep_csv(cfg)}};
        case Scenario::Fidelity: return {{cfg.out_path, detail::fidelity_csv(cfg)}};
        case Scenario::Figure: {
            const std::string path = cfg.out_path.empty() ? "fig" + cfg.figure_id + ".csv" : cfg.out_path;
            if (cfg.figure_id == "2") return {{path, detail::figure2_csv()}};
            const std::size_t n = required_intervals(spectral_m0sq(cfg.params), cfg.t_end);
            const TimeGrid grid(cfg.t_end, n);
            return {{path, detail::traces_csv(cfg.params, cfg.methods, StateVec3::ground(), grid)}};
        }
    }
    return {};
}

// Writes every output or none of them.
inline void write_outputs(const std::vector<OutputFile>& files, std::ostream& out) {
    std::vector<std::string> written;
    for (const auto& f : files) {
        if (f.path.empty()) {
            out << f.content;
            continue;
        }
        std::ofstream os(f.path, std::ios::binary | std::ios::trunc);
        os << f.content;
        os.close();
        if (!os) {
            std::error_code ec;
            std::filesystem::remove(f.path, ec);
            for (const auto& w : written) std::filesystem::remove(w, ec);
            throw std::runtime_error("cannot write '" + f.path + "'");
        }
        written.push_back(f.path);
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const UsageError& e) {
        err << "raman: " << e.what() << "\n" << usage_text();
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "raman: " << e.what() << "\n" << usage_text();
        return kExitUsage;
    }
    for (const auto& n : cfg.notices) err << "raman: notice: " << n << '\n';
    try {
        write_outputs(execute(cfg), out);
    } catch (const std::exception& e) {
        err << "raman: " << args.front() << ": " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace raman::cli
