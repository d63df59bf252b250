#include "bltorsion/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace bltorsion
{

namespace
{

using nlohmann::json;

json parse_json(const std::string& text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
}

const json& require(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(path + "/" + key, "required field is missing");
    return *it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        throw SchemaError(path, "expected a number");
    return j.get<double>();
}

long integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw SchemaError(path, "expected an integer");
    return j.get<long>();
}

std::string text_field(const json& j, const std::string& path)
{
    if (!j.is_string())
        throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

cplx complex_value(const json& j, const std::string& path)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SchemaError(path, "expected a number or an [re, im] pair");
}

CMatrix matrix(const json& j, const std::string& path)
{
    if (!j.is_array())
        throw SchemaError(path, "expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    CMatrix m;
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string rpath = path + "/" + std::to_string(r);
        if (!row.is_array())
            throw SchemaError(rpath, "expected a row array");
        if (cols < 0)
        {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        }
        else if (static_cast<Eigen::Index>(row.size()) != cols)
            throw SchemaError(rpath, "row length " + std::to_string(row.size()) + " differs from " +
                                         std::to_string(cols));
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_value(row[static_cast<std::size_t>(c)], rpath + "/" + std::to_string(c));
    }
    if (cols < 0)
        m.resize(0, 0);
    return m;
}

std::vector<CMatrix> matrix_list(const json& j, const std::string& path)
{
    if (!j.is_array())
        throw SchemaError(path, "expected an array of matrices");
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(matrix(j[i], path + "/" + std::to_string(i)));
    return out;
}

// A matrix with no rows still has a column count fixed by the complex.
void fix_empty(CMatrix& m, Eigen::Index rows, Eigen::Index cols)
{
    if (m.size() == 0)
        m.resize(rows, cols);
}

} // namespace

ComplexInput parse_complex(const std::string& text)
{
    const json j = parse_json(text);
    ComplexInput in;
    const json& dims = require(j, "dims", "");
    if (!dims.is_array() || dims.empty())
        throw SchemaError("/dims", "expected a non-empty array of dimensions");
    for (std::size_t i = 0; i < dims.size(); ++i)
    {
        const long d = integer(dims[i], "/dims/" + std::to_string(i));
        if (d < 0)
            throw SchemaError("/dims/" + std::to_string(i), "dimension must be non-negative");
        in.complex.dims.push_back(d);
    }
    in.complex.differentials = matrix_list(require(j, "differentials", ""), "/differentials");
    if (in.complex.differentials.size() + 1 != in.complex.dims.size())
        throw SchemaError("/differentials", "expected " + std::to_string(in.complex.dims.size() - 1) +
                                                " differentials");
    for (std::size_t i = 0; i < in.complex.differentials.size(); ++i)
    {
        CMatrix& m = in.complex.differentials[i];
        fix_empty(m, in.complex.dims[i + 1], in.complex.dims[i]);
        if (m.rows() != in.complex.dims[i + 1] || m.cols() != in.complex.dims[i])
            throw SchemaError("/differentials/" + std::to_string(i),
                              "shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  " does not match dims");
    }
    in.forms.grams = matrix_list(require(j, "forms", ""), "/forms");
    if (in.forms.grams.size() != in.complex.dims.size())
        throw SchemaError("/forms", "expected one Gram matrix per degree");
    for (std::size_t i = 0; i < in.forms.grams.size(); ++i)
    {
        CMatrix& g = in.forms.grams[i];
        fix_empty(g, in.complex.dims[i], in.complex.dims[i]);
        if (g.rows() != in.complex.dims[i] || g.cols() != in.complex.dims[i])
            throw SchemaError("/forms/" + std::to_string(i), "Gram matrix shape does not match dims");
    }
    if (j.contains("cohomology"))
    {
        CohomologyData h;
        h.bases = matrix_list(j["cohomology"], "/cohomology");
        if (h.bases.size() != in.complex.dims.size())
            throw SchemaError("/cohomology", "expected one basis per degree");
        for (std::size_t i = 0; i < h.bases.size(); ++i)
        {
            fix_empty(h.bases[i], in.complex.dims[i], 0);
            if (h.bases[i].rows() != in.complex.dims[i])
                throw SchemaError("/cohomology/" + std::to_string(i), "basis rows do not match dims");
        }
        in.cohomology = h;
    }
    return in;
}

MorseInput parse_morse(const std::string& text)
{
    const json j = parse_json(text);
    MorseInput in;
    if (j.contains("circle"))
    {
        const json& c = j["circle"];
        const long pairs = integer(require(c, "pairs", "/circle"), "/circle/pairs");
        const cplx l = complex_value(require(c, "holonomy", "/circle"), "/circle/holonomy");
        const long seam = c.contains("seam") ? integer(c["seam"], "/circle/seam") : 0;
        const double len = c.contains("L") ? number(c["L"], "/circle/L") : 1.0;
        if (pairs < 1)
            throw SchemaError("/circle/pairs", "must be at least 1");
        if (l == cplx(0.0))
            throw SchemaError("/circle/holonomy", "must be nonzero");
        if (!(len > 0.0))
            throw SchemaError("/circle/L", "must be positive");
        in.system = make_circle_morse(static_cast<int>(pairs), l, static_cast<int>(seam), len);
        in.holonomy = CMatrix::Constant(1, 1, l);
    }
    else
    {
        in.system.rank = static_cast<int>(integer(require(j, "rank", ""), "/rank"));
        if (in.system.rank < 1)
            throw SchemaError("/rank", "must be at least 1");
        const json& points = require(j, "points", "");
        if (!points.is_array())
            throw SchemaError("/points", "expected an array");
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            const std::string p = "/points/" + std::to_string(i);
            CriticalPoint cp;
            cp.id = text_field(require(points[i], "id", p), p + "/id");
            cp.index = static_cast<int>(integer(require(points[i], "index", p), p + "/index"));
            in.system.points.push_back(cp);
        }
        const json& inst = require(j, "instantons", "");
        if (!inst.is_array())
            throw SchemaError("/instantons", "expected an array");
        for (std::size_t i = 0; i < inst.size(); ++i)
        {
            const std::string p = "/instantons/" + std::to_string(i);
            Instanton g;
            g.from = text_field(require(inst[i], "from", p), p + "/from");
            g.to = text_field(require(inst[i], "to", p), p + "/to");
            g.sign = static_cast<int>(integer(require(inst[i], "sign", p), p + "/sign"));
            if (inst[i].contains("holonomy"))
                g.holonomy = matrix(inst[i]["holonomy"], p + "/holonomy");
            else
                g.holonomy = CMatrix::Identity(in.system.rank, in.system.rank);
            in.system.instantons.push_back(g);
        }
        if (j.contains("generator_image"))
            in.holonomy = matrix(j["generator_image"], "/generator_image");
    }
    in.forms = CriticalForms::identity(in.system);
    if (j.contains("forms"))
    {
        const json& f = j["forms"];
        if (!f.is_object())
            throw SchemaError("/forms", "expected an object keyed by point id");
        for (const auto& [id, g] : f.items())
        {
            if (!in.forms.forms.count(id))
                throw SchemaError("/forms/" + id, "unknown critical point");
            in.forms.forms[id] = matrix(g, "/forms/" + id);
        }
    }
    in.base_form = j.contains("base_form") ? matrix(j["base_form"], "/base_form")
                                           : CMatrix(CMatrix::Identity(in.system.rank, in.system.rank));
    if (j.contains("euler"))
    {
        const json& e = j["euler"];
        if (!e.is_object())
            throw SchemaError("/euler", "expected an object of windings");
        for (const auto& [id, w] : e.items())
            in.windings[id] = static_cast<int>(integer(w, "/euler/" + id));
    }
    return in;
}

KnotPresentation parse_knot(const std::string& text)
{
    const json j = parse_json(text);
    if (j.contains("braid"))
    {
        const json& b = j["braid"];
        const long strands = integer(require(b, "strands", "/braid"), "/braid/strands");
        const json& word = require(b, "word", "/braid");
        if (!word.is_array())
            throw SchemaError("/braid/word", "expected an array of signed generator indices");
        std::vector<int> letters;
        for (std::size_t i = 0; i < word.size(); ++i)
            letters.push_back(static_cast<int>(integer(word[i], "/braid/word/" + std::to_string(i))));
        return braid_presentation(static_cast<int>(strands), letters);
    }
    const json& gens = require(j, "generators", "");
    const json& rels = require(j, "relators", "");
    if (!gens.is_array() || !rels.is_array())
        throw SchemaError("/generators", "generators and relators must be arrays of strings");
    std::vector<std::string> g;
    std::vector<std::string> r;
    for (std::size_t i = 0; i < gens.size(); ++i)
        g.push_back(text_field(gens[i], "/generators/" + std::to_string(i)));
    for (std::size_t i = 0; i < rels.size(); ++i)
        r.push_back(text_field(rels[i], "/relators/" + std::to_string(i)));
    return KnotPresentation::from_strings(g, r);
}

CircleInput parse_circle(const std::string& text)
{
    const json j = parse_json(text);
    CircleInput in;
    if (j.contains("L"))
        in.model.circumference = number(j["L"], "/L");
    const json& l = require(j, "lambda", "");
    in.model.holonomy.clear();
    if (l.is_array() && !l.empty() && l[0].is_array())
    {
        for (std::size_t i = 0; i < l.size(); ++i)
            in.model.holonomy.push_back(complex_value(l[i], "/lambda/" + std::to_string(i)));
    }
    else
    {
        in.model.holonomy.push_back(complex_value(l, "/lambda"));
    }
    if (j.contains("phi"))
    {
        const json& p = j["phi"];
        const std::string kind = text_field(require(p, "kind", "/phi"), "/phi/kind");
        if (kind == "zero")
            in.model.phi.kind = PhiSpec::Kind::zero;
        else if (kind == "sin")
        {
            in.model.phi.kind = PhiSpec::Kind::sin;
            in.model.phi.amplitude = number(require(p, "amp", "/phi"), "/phi/amp");
        }
        else
            throw SchemaError("/phi/kind", "expected \"zero\" or \"sin\"");
        if (p.contains("winding"))
            in.model.phi.winding = static_cast<int>(integer(p["winding"], "/phi/winding"));
    }
    if (j.contains("f"))
    {
        const json& f = j["f"];
        const std::string kind = text_field(require(f, "kind", "/f"), "/f/kind");
        if (kind != "cos")
            throw SchemaError("/f/kind", "expected \"cos\"");
        in.model.f.wells = static_cast<int>(integer(require(f, "wells", "/f"), "/f/wells"));
        if (in.model.f.wells < 1)
            throw SchemaError("/f/wells", "must be at least 1");
    }
    if (j.contains("N"))
        in.grid = static_cast<int>(integer(j["N"], "/N"));
    if (j.contains("T"))
        in.T = number(j["T"], "/T");
    if (j.contains("flat_window"))
        in.model.flat_window = number(j["flat_window"], "/flat_window");
    try
    {
        in.model.validate();
    }
    catch (const ShapeError& e)
    {
        throw SchemaError("", e.what());
    }
    return in;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw SchemaError(path, "cannot open input file");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::map<std::string, int> parse_windings(const std::string& spec)
{
    std::map<std::string, int> out;
    if (spec.empty() || spec == "canonical")
        return out;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ','))
    {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SchemaError("--euler", "expected id=winding, got '" + item + "'");
        int w = 0;
        const std::string value = item.substr(eq + 1);
        const auto res = std::from_chars(value.data(), value.data() + value.size(), w);
        if (res.ec != std::errc() || res.ptr != value.data() + value.size())
            throw SchemaError("--euler", "winding '" + value + "' is not an integer");
        out[item.substr(0, eq)] = w;
    }
    return out;
}

std::string format_number(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows)
{
    out << "experiment,params,value_re,value_im,tolerance,pass\n";
    for (const CsvRow& r : rows)
    {
        std::string params;
        for (const auto& [k, v] : r.params)
        {
            if (!params.empty())
                params += ';';
            params += k + "=" + v;
        }
        out << r.experiment << ',' << params << ',' << format_number(r.value.real()) << ','
            << format_number(r.value.imag()) << ',' << format_number(r.tolerance) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
}

} // namespace bltorsion
