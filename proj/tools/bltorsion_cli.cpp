#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "bltorsion/alexander.hpp"
#include "bltorsion/circle_spectral.hpp"
#include "bltorsion/io.hpp"
#include "bltorsion/turaev.hpp"
#include "bltorsion/witten.hpp"

using namespace bltorsion;

namespace
{

struct Globals
{
    std::string out;
    std::optional<std::uint64_t> seed;
    double tol_scale = 1.0;
};

struct SpectralArgs
{
    std::string file;
    std::string op = "rstorsion";
    std::optional<int> grid;
    std::vector<double> Ts;
    std::optional<double> cut;
    std::string method = "exact";
};

std::string show(cplx z)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g %c %.15gi", z.real(), std::signbit(z.imag()) ? '-' : '+',
                  std::abs(z.imag()));
    return buf;
}

void emit(const Globals& g, const std::vector<CsvRow>& rows)
{
    if (g.out.empty())
        return;
    std::ofstream f(g.out);
    if (!f)
        throw SchemaError("--out", "cannot write '" + g.out + "'");
    write_csv(f, rows);
}

Tolerances tolerances(const Globals& g)
{
    return default_tolerances().scaled(g.tol_scale);
}

int run_finite(const Globals& g, const std::string& file)
{
    const ComplexInput in = parse_complex(read_file(file));
    const Tolerances tol = tolerances(g);
    const CohomologyData h = in.cohomology ? *in.cohomology : cohomology(in.complex, tol);
    LiftChoices choices;
    choices.seed = g.seed;
    const cplx value = torsion_form(in.complex, in.forms, h, tol, choices);
    std::cout << show(value) << "\n";
    emit(g, {{"torsion_finite", {{"file", file}}, value, tol.rank, true}});
    return 0;
}

int run_morse(const Globals& g, const std::string& file)
{
    const MorseInput in = parse_morse(read_file(file));
    const cplx value = milnor_torsion(in.system, in.forms, std::nullopt, tolerances(g));
    std::cout << show(value) << "\n";
    emit(g, {{"torsion_morse", {{"file", file}}, value, tolerances(g).rank, true}});
    return 0;
}

int run_turaev(const Globals& g, const std::string& file, const std::string& euler)
{
    const MorseInput in = parse_morse(read_file(file));
    if (!in.holonomy)
        throw SchemaError("/circle", "turaev torsion needs a circle system or a generator_image");
    std::map<std::string, int> windings = in.windings;
    std::optional<int> target;
    if (!euler.empty())
    {
        try
        {
            std::size_t used = 0;
            const int cls = std::stoi(euler, &used);
            if (used != euler.size())
                throw std::invalid_argument(euler);
            target = cls;
        }
        catch (const std::exception&)
        {
            windings = parse_windings(euler);
        }
    }
    EulerStructure e = EulerStructure::circle(in.system, windings);
    if (target)
    {
        const int shift = *target - euler_class_circle(in.system, e);
        auto first_min = std::find_if(in.system.points.begin(), in.system.points.end(),
                                      [](const CriticalPoint& p) { return p.index == 0; });
        windings[first_min->id] += shift;
        e = EulerStructure::circle(in.system, windings);
    }
    const cplx value =
        turaev_torsion(in.system, Representation::circle(*in.holonomy), e, in.base_form, std::nullopt, tolerances(g));
    const int cls = in.system.circle ? euler_class_circle(in.system, e) : 0;
    std::cout << show(value) << "\n";
    if (in.system.circle)
        std::cout << "euler class " << cls << "\n";
    emit(g, {{"torsion_turaev", {{"file", file}, {"euler_class", std::to_string(cls)}}, value, tolerances(g).rank,
              true}});
    return 0;
}

int run_alexander(const Globals& g, const std::string& file)
{
    const LaurentPolynomial p = fox_alexander(parse_knot(read_file(file)));
    std::cout << p.to_string() << "\n";
    std::vector<CsvRow> rows;
    for (int k = p.low(); k <= p.high(); ++k)
        rows.push_back({"alexander", {{"file", file}, {"power", std::to_string(k)}},
                        static_cast<double>(p.coeff(k)), 0.0, true});
    emit(g, rows);
    return 0;
}

RsMethod parse_method(const std::string& m)
{
    if (m == "gy")
        return RsMethod::gelfand_yaglom;
    if (m == "discrete")
        return RsMethod::discrete;
    return RsMethod::exact;
}

std::vector<std::pair<std::string, std::string>> base_params(const SpectralArgs& a, const CircleModel& m)
{
    std::string lambda;
    for (cplx l : m.holonomy)
        lambda += (lambda.empty() ? "" : "|") + format_number(l.real()) + ":" + format_number(l.imag());
    return {{"file", a.file}, {"L", format_number(m.circumference)}, {"lambda", lambda}};
}

int run_spectral(const Globals& g, const SpectralArgs& a)
{
    const CircleInput in = parse_circle(read_file(a.file));
    const Tolerances tol = tolerances(g);
    const int grid = a.grid.value_or(in.grid);
    const double T = a.Ts.empty() ? in.T : a.Ts.front();
    const CircleModel base = in.model;
    const CircleModel model = witten_deform(base, T);
    auto params = base_params(a, base);
    std::vector<CsvRow> rows;

    auto push = [&](const std::string& label, std::vector<std::pair<std::string, std::string>> extra, cplx value,
                    double tolerance, bool pass) {
        auto p = params;
        p.insert(p.end(), extra.begin(), extra.end());
        rows.push_back({a.op, p, value, tolerance, pass});
        std::cout << label << " " << show(value) << "\n";
    };

    if (a.op == "spectrum")
    {
        const std::size_t count = 8;
        for (int j = 0; j < model.rank(); ++j)
        {
            const CircleModel comp = model.component(j);
            std::vector<cplx> values;
            std::string method = "exact";
            if (comp.is_reference())
            {
                values = exact_spectrum_circle(comp.holonomy.front(), comp.circumference).lowest(count);
            }
            else
            {
                method = "discrete";
                values = eigenvalues(build_discrete(comp, grid).laplacian0());
                std::stable_sort(values.begin(), values.end(),
                                 [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
                values.resize(std::min(count, values.size()));
            }
            for (std::size_t k = 0; k < values.size(); ++k)
                push("component " + std::to_string(j) + " mu[" + std::to_string(k) + "]",
                     {{"component", std::to_string(j)}, {"rank", std::to_string(k)}, {"method", method}}, values[k],
                     0.0, true);
        }
    }
    else if (a.op == "zetadet")
    {
        for (int j = 0; j < model.rank(); ++j)
        {
            const CircleModel comp = model.component(j);
            for (int degree : {0, 1})
            {
                cplx value;
                std::string method = "exact";
                if (comp.is_reference())
                {
                    ZetaOptions opt;
                    if (a.cut)
                        opt.band = *a.cut;
                    value = zeta_det_exact(comp.holonomy.front(), comp.circumference, degree, opt, tol);
                }
                else
                {
                    method = "gy";
                    value = gelfand_yaglom_det(comp, degree, tol);
                }
                push("component " + std::to_string(j) + " degree " + std::to_string(degree) + " det",
                     {{"component", std::to_string(j)}, {"degree", std::to_string(degree)}, {"method", method}}, value,
                     tol.ode, true);
            }
        }
    }
    else if (a.op == "rstorsion")
    {
        RsOptions opt;
        opt.method = parse_method(a.method);
        opt.cut = a.cut.value_or(opt.method == RsMethod::gelfand_yaglom ? 0.0 : 0.5);
        if (a.grid)
            opt.grids = {*a.grid, 2 * *a.grid, 4 * *a.grid};
        const RsTorsion rs = rs_torsion(model, opt, tol);
        push("rs torsion", {{"method", a.method}, {"cut", format_number(opt.cut)}}, rs.value,
             rs.extrapolation_error, true);
        std::cout << "small band dims (" << rs.small_dims[0] << ", " << rs.small_dims[1] << ")\n";
    }
    else if (a.op == "witten")
    {
        const SmallSpectrum s = small_spectrum_dims(base, T, grid, 1.0, tol);
        for (int deg = 0; deg < 2; ++deg)
        {
            const auto d = static_cast<std::size_t>(deg);
            const std::vector<std::pair<std::string, std::string>> p{
                {"T", format_number(T)}, {"N", std::to_string(grid)}, {"degree", std::to_string(deg)}};
            auto with = [&](const char* q) {
                auto out = p;
                out.emplace_back("quantity", q);
                return out;
            };
            push("degree " + std::to_string(deg) + " small count", with("count"), s.counts[d], 0.0, true);
            push("degree " + std::to_string(deg) + " small trace", with("small_trace"), s.small_trace[d], 0.0, true);
            push("degree " + std::to_string(deg) + " large min", with("large_min"), s.large_min[d], 0.0, true);
        }
    }
    else if (a.op == "thm33")
    {
        const std::vector<double> Ts = a.Ts.empty() ? std::vector<double>{4.0, 10.0} : a.Ts;
        for (const Theorem33Row& r : theorem33_experiment(base, Ts, grid, tol))
        {
            push("T " + format_number(r.T) + " ratio",
                 {{"T", format_number(r.T)}, {"N", std::to_string(grid)},
                  {"chain_defect", format_number(r.chain_defect)}},
                 r.ratio, 0.0, true);
        }
    }
    else if (a.op == "bz")
    {
        const cplx value = bz_compare(model, parse_method(a.method));
        const double tolerance = 1e-8 * g.tol_scale;
        const bool pass = std::abs(value - 1.0) <= tolerance;
        push("bz ratio", {{"method", a.method}}, value, tolerance, pass);
        emit(g, rows);
        return pass ? 0 : 1;
    }
    emit(g, rows);
    return 0;
}

int run_verify(const Globals& g, const std::vector<int>& only)
{
    acceptance::SuiteOptions opt;
    if (g.seed)
        opt.seed = *g.seed;
    opt.tol_scale = g.tol_scale;
    opt.only = only;
    std::vector<CsvRow> rows;
    int failed = 0;
    acceptance::run_suite(opt, [&](const acceptance::Criterion& c) {
        std::cout << acceptance::format_line(c) << std::endl;
        failed += !c.pass;
        rows.push_back({"verify",
                        {{"criterion", std::to_string(c.id)}, {"seconds", format_number(c.seconds)},
                         {"budget", format_number(c.budget)}},
                        c.pass ? 1.0 : 0.0, 0.0, c.pass});
    });
    std::cout << (rows.size() - static_cast<std::size_t>(failed)) << "/" << rows.size() << " criteria passed\n";
    emit(g, rows);
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symmetric bilinear torsions: finite, Milnor, Turaev, Ray-Singer"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::uint64_t seed = 0;
    app.add_option("--out", g.out, "Write results as CSV to this path");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized choices");
    app.add_option("--tol-scale", g.tol_scale, "Multiply numerical tolerances")->check(CLI::PositiveNumber);

    auto* torsion = app.add_subcommand("torsion", "Finite, Milnor or Turaev torsion");
    torsion->require_subcommand(1);
    std::string file;
    std::string euler;
    auto* finite = torsion->add_subcommand("finite", "Torsion of a finite complex (complex.json)");
    finite->add_option("file", file)->required()->check(CLI::ExistingFile);
    auto* morse = torsion->add_subcommand("morse", "Milnor torsion of a Morse system (morse.json)");
    morse->add_option("file", file)->required()->check(CLI::ExistingFile);
    auto* turaev = torsion->add_subcommand("turaev", "Turaev torsion of a circle system (morse.json)");
    turaev->add_option("file", file)->required()->check(CLI::ExistingFile);
    turaev->add_option("--euler", euler, "Euler class (integer) or windings id=w,id=w");

    auto* alexander = app.add_subcommand("alexander", "Alexander polynomial (knot.json)");
    alexander->add_option("file", file)->required()->check(CLI::ExistingFile);

    SpectralArgs sa;
    int grid = 0;
    double cut = 0.0;
    auto* spectral = app.add_subcommand("spectral", "Circle spectral experiments (circle.json)");
    spectral->add_option("file", sa.file)->required()->check(CLI::ExistingFile);
    spectral->add_option("--op", sa.op)
        ->check(CLI::IsMember({"spectrum", "zetadet", "rstorsion", "witten", "thm33", "bz"}));
    auto* grid_opt = spectral->add_option("--grid", grid, "Grid size N")->check(CLI::Range(8, 4096));
    spectral->add_option("--T", sa.Ts, "Deformation parameter(s)")->expected(1, -1);
    auto* cut_opt = spectral->add_option("--cut", cut, "Spectral cut radius a")->check(CLI::NonNegativeNumber);
    spectral->add_option("--method", sa.method)->check(CLI::IsMember({"exact", "gy", "discrete"}));

    std::string what;
    std::vector<int> only;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("what", what)->required()->check(CLI::IsMember({"all"}));
    verify->add_option("--only", only, "Restrict to these criterion ids");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*seed_opt)
        g.seed = seed;
    if (*grid_opt)
        sa.grid = grid;
    if (*cut_opt)
        sa.cut = cut;

    try
    {
        if (*finite)
            return run_finite(g, file);
        if (*morse)
            return run_morse(g, file);
        if (*turaev)
            return run_turaev(g, file, euler);
        if (*alexander)
            return run_alexander(g, file);
        if (*spectral)
            return run_spectral(g, sa);
        if (*verify)
            return run_verify(g, only);
    }
    catch (const SchemaError& e)
    {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    }
    catch (const ShapeError& e)
    {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    catch (const Error& e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
