#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stirlingq/analysis.hpp"
#include "stirlingq/csv.hpp"
#include "stirlingq/cycle.hpp"
#include "stirlingq/errors.hpp"
#include "stirlingq/reproduce.hpp"
#include "stirlingq/scalar_search.hpp"

namespace stirlingq::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MediumFlags {
    std::string medium;
    double u{1.0};
    double ell{0.5};
    int barriers{1};
    double d{1.0};
    std::string wavelength{"thermal"};
    CLI::Option* medium_opt{};
    CLI::Option* u_opt{};
    CLI::Option* ell_opt{};
    CLI::Option* barriers_opt{};
    CLI::Option* d_opt{};
    CLI::Option* wavelength_opt{};
};

struct SeriesFlags {
    double tol{1e-14};
    long long max_terms{0};
    CLI::Option* tol_opt{};
    CLI::Option* max_terms_opt{};
};

void add_medium_flags(CLI::App* app, MediumFlags& f) {
    f.medium_opt = app->add_option("--medium", f.medium, "working medium")->check(CLI::IsMember({"ho", "pib"}));
    f.u_opt = app->add_option("--u", f.u, "oscillator frequency hbar*omega/(k_B T_c)");
    f.ell_opt = app->add_option("--ell", f.ell, "box half-length a/lambda");
    f.barriers_opt = app->add_option("--barriers", f.barriers, "number of symmetric barriers (box)");
    f.d_opt = app->add_option("--d", f.d, "compartment length ratio x/y (box, single barrier)");
    f.wavelength_opt = app->add_option("--wavelength", f.wavelength, "lambda convention for a/lambda")
                           ->check(CLI::IsMember({"thermal", "plain"}));
}

void add_series_flags(CLI::App* app, SeriesFlags& f) {
    f.tol_opt = app->add_option("--tol", f.tol, "series relative truncation tolerance");
    f.max_terms_opt = app->add_option("--max-terms", f.max_terms, "series term cap");
}

SeriesControl build_ctrl(const SeriesFlags& f) {
    // an explicit --max-terms wins over STIRLINGQ_MAX_TERMS, even a malformed one
    SeriesControl ctrl = f.max_terms_opt->count() ? SeriesControl{} : SeriesControl::from_environment();
    if (f.tol_opt->count()) ctrl.rel_tol = f.tol;
    if (f.max_terms_opt->count()) ctrl.max_terms = f.max_terms;
    ctrl.validate();
    return ctrl;
}

Medium build_medium(const MediumFlags& f, std::optional<SweepParam> swept = std::nullopt) {
    if (!f.medium_opt->count()) throw UsageError("--medium ho|pib is required");
    if (f.medium == "ho") {
        for (const CLI::Option* o : {f.ell_opt, f.barriers_opt, f.d_opt, f.wavelength_opt}) {
            if (o->count()) throw UsageError(o->get_name() + " does not apply to --medium ho");
        }
        if (swept == SweepParam::Ell || swept == SweepParam::Barriers || swept == SweepParam::D) {
            throw UsageError("cannot sweep a box parameter with --medium ho");
        }
        if (!f.u_opt->count() && swept != SweepParam::U) throw UsageError("--medium ho needs --u");
        return Medium::harmonic(f.u);
    }
    if (f.u_opt->count()) throw UsageError("--u does not apply to --medium pib");
    if (swept == SweepParam::U) throw UsageError("cannot sweep u with --medium pib");
    if (!f.ell_opt->count() && swept != SweepParam::Ell) throw UsageError("--medium pib needs --ell");
    const Wavelength w = f.wavelength == "plain" ? Wavelength::Plain : Wavelength::Thermal;
    return Medium::box(f.ell, f.barriers, f.d, w);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_numbers(const std::string& s, const char* flag) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0') throw UsageError(std::string(flag) + ": not a number: " + item);
        out.push_back(v);
    }
    return out;
}

CsvTable cycle_table(const CycleResult& c) {
    CsvTable t;
    t.header = {"Q12", "Q23", "Q34", "Q41", "W_net", "Q_in", "eta", "engine_regime"};
    t.add_row({format_number(c.Q12), format_number(c.Q23), format_number(c.Q34), format_number(c.Q41),
               format_number(c.W_net), format_number(c.Q_in), format_cell(c.eta), c.engine_regime ? "1" : "0"});
    return t;
}

CsvTable sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    CsvTable t;
    t.header.emplace_back(to_string(spec.param));
    for (Quantity q : spec.quantities) t.header.emplace_back(to_string(q));
    t.header.emplace_back("engine_regime");
    t.header.emplace_back("status");
    for (const auto& r : rows) {
        std::vector<std::string> cells{format_number(r.value)};
        for (const auto& q : r.quantities) cells.push_back(format_cell(q));
        cells.emplace_back(r.engine_regime ? "1" : "0");
        cells.emplace_back(r.error ? "error" : "ok");
        t.add_row(std::move(cells));
    }
    return t;
}

const char* kDescription = "Degeneracy-assisted quantum Stirling heat engine: cycles, sweeps, optimizers, tables.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{kDescription, "stirlingq"};
    app.require_subcommand(1);

    std::string out_path = "-";
    const auto add_out = [&out_path](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file, '-' for stdout");
    };

    // Per-subcommand flag storage; only the parsed subcommand's entries are read.
    MediumFlags cycle_medium, sweep_medium, opt_medium;
    SeriesFlags cycle_series, sweep_series, opt_series, table1_series, table2_series, fig_series;
    double r = 0.0;

    CLI::App* cycle_cmd = app.add_subcommand("cycle", "evaluate one Stirling cycle");
    add_medium_flags(cycle_cmd, cycle_medium);
    add_series_flags(cycle_cmd, cycle_series);
    CLI::Option* cycle_r = cycle_cmd->add_option("--r", r, "T_h/T_c");
    add_out(cycle_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "1-D parameter sweep to CSV");
    add_medium_flags(sweep_cmd, sweep_medium);
    add_series_flags(sweep_cmd, sweep_series);
    CLI::Option* sweep_r = sweep_cmd->add_option("--r", r, "T_h/T_c when not swept");
    std::string sweep_param;
    double from = 0.0, to = 0.0;
    int points = 200;
    bool log_grid = false;
    std::string values, quantities = "W_net,eta";
    sweep_cmd->add_option("--sweep", sweep_param, "parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"r", "u", "ell", "B", "d"}));
    CLI::Option* from_opt = sweep_cmd->add_option("--from", from, "grid start");
    CLI::Option* to_opt = sweep_cmd->add_option("--to", to, "grid end");
    CLI::Option* points_opt = sweep_cmd->add_option("--points", points, "grid points (default 200)");
    sweep_cmd->add_flag("--log", log_grid, "geometric spacing");
    CLI::Option* values_opt = sweep_cmd->add_option("--values", values, "explicit comma-separated grid");
    sweep_cmd->add_option("--quantities", quantities,
                          "comma list of W_net,eta,eta_over_carnot,Q12,Q23,Q34,Q41,Q_in");
    add_out(sweep_cmd);

    CLI::App* opt_cmd = app.add_subcommand("optimize", "maximize efficiency or work over T_h/T_c");
    add_medium_flags(opt_cmd, opt_medium);
    add_series_flags(opt_cmd, opt_series);
    std::string target = "efficiency";
    opt_cmd->add_option("--target", target, "efficiency or work")->check(CLI::IsMember({"efficiency", "work"}));
    add_out(opt_cmd);

    CLI::App* table1_cmd = app.add_subcommand("table1", "oscillator maximum-efficiency table");
    add_series_flags(table1_cmd, table1_series);
    add_out(table1_cmd);
    CLI::App* table2_cmd = app.add_subcommand("table2", "box maximum-efficiency table");
    add_series_flags(table2_cmd, table2_series);
    add_out(table2_cmd);

    CLI::App* fig_cmd = app.add_subcommand("figure", "curve data for one figure (2-10)");
    int figure = 0;
    int fig_points = 200;
    std::string barriers_list;
    fig_cmd->add_option("n", figure, "figure number")->required()->check(CLI::Range(2, 10));
    fig_cmd->add_option("--points", fig_points, "grid points (default 200)");
    fig_cmd->add_option("--barriers-list", barriers_list, "figure 8 barrier counts, e.g. 1,2,3");
    add_series_flags(fig_cmd, fig_series);
    add_out(fig_cmd);

    std::vector<std::string> argv_store{"stirlingq"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const SeriesFlags& series_flags = cycle_cmd->parsed()    ? cycle_series
                                          : sweep_cmd->parsed()  ? sweep_series
                                          : opt_cmd->parsed()    ? opt_series
                                          : table1_cmd->parsed() ? table1_series
                                          : table2_cmd->parsed() ? table2_series
                                                                 : fig_series;
        const SeriesControl ctrl = build_ctrl(series_flags);
        CsvTable table;
        if (cycle_cmd->parsed()) {
            if (!cycle_r->count()) throw UsageError("cycle needs --r");
            table = cycle_table(run_cycle({build_medium(cycle_medium), r, ctrl}));
        } else if (sweep_cmd->parsed()) {
            const SweepParam param = *parse_sweep_param(sweep_param);
            if (param != SweepParam::R && !sweep_r->count()) throw UsageError("sweep needs --r unless sweeping r");
            if (param == SweepParam::R && sweep_r->count()) throw UsageError("--r conflicts with --sweep r");
            std::vector<double> grid;
            if (values_opt->count()) {
                if (from_opt->count() || to_opt->count() || points_opt->count() || log_grid) {
                    throw UsageError("--values excludes --from/--to/--points/--log");
                }
                grid = parse_numbers(values, "--values");
            } else {
                if (!from_opt->count() || !to_opt->count()) throw UsageError("sweep needs --from and --to");
                grid = log_grid ? geometric_grid(from, to, points) : linear_grid(from, to, points);
            }
            std::vector<Quantity> qs;
            for (const auto& name : split_list(quantities)) {
                const auto q = parse_quantity(name);
                if (!q) throw UsageError("unknown quantity: " + name);
                qs.push_back(*q);
            }
            SweepSpec spec{build_medium(sweep_medium, param), r, param, grid, qs};
            if (param == SweepParam::R) spec.r = 1.0;
            table = sweep_table(spec, sweep(spec, ctrl));
        } else if (opt_cmd->parsed()) {
            const Medium m = build_medium(opt_medium);
            const OptimizeResult res = target == "work" ? maximize_work(m, ctrl) : maximize_efficiency(m, ctrl);
            table.header = {"r_star", "value", "bracket_lo", "bracket_hi", "iterations"};
            table.add_row({format_number(res.r_star), format_number(res.value), format_number(res.bracket.first),
                           format_number(res.bracket.second), std::to_string(res.iterations)});
        } else if (table1_cmd->parsed()) {
            table = efficiency_table_ho(ctrl);
        } else if (table2_cmd->parsed()) {
            table = efficiency_table_pib(ctrl);
        } else if (fig_cmd->parsed()) {
            FigureOptions fo;
            fo.points = fig_points;
            if (!barriers_list.empty()) {
                if (figure != 8) throw UsageError("--barriers-list applies only to figure 8");
                fo.barrier_counts.clear();
                for (double b : parse_numbers(barriers_list, "--barriers-list")) {
                    if (!(b >= 1.0) || b != static_cast<int>(b)) throw UsageError("barrier counts must be positive integers");
                    fo.barrier_counts.push_back(static_cast<int>(b));
                }
            }
            table = figure_table(figure, fo, ctrl);
        }

        if (out_path == "-") {
            table.write(out);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw UsageError("cannot open output file " + out_path);
            table.write(file);
            if (!file) throw UsageError("failed writing " + out_path);
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "numeric error: " << e.what() << " (partial sum " << e.partial_sum() << ", " << e.terms_used()
            << " terms)\n";
        return kNumeric;
    } catch (const AnalysisError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kNumeric;
    }
}

}  // namespace stirlingq::cli
