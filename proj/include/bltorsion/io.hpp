#ifndef BLTORSION_IO_HPP
#define BLTORSION_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bltorsion/alexander.hpp"
#include "bltorsion/circle_model.hpp"
#include "bltorsion/turaev.hpp"

namespace bltorsion
{

/// Input that does not match the expected JSON schema. `field` is a JSON
/// pointer to the offending value.
class SchemaError : public ShapeError
{
public:
    SchemaError(const std::string& field, const std::string& what)
        : ShapeError(field + ": " + what), field_(field)
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// complex.json: {"dims": [..], "differentials": [M, ..], "forms": [G, ..],
/// "cohomology": [H, ..] (optional)}. Matrices are arrays of rows whose
/// entries are numbers or [re, im] pairs.
struct ComplexInput
{
    GradedComplex complex;
    BilinearStructure forms;
    std::optional<CohomologyData> cohomology;
};

/// morse.json, explicit form: {"rank", "points": [{"id", "index"}],
/// "instantons": [{"from", "to", "sign", "holonomy"}], "forms": {id: G}}.
/// Circle shorthand: {"circle": {"pairs", "holonomy", "seam", "L"}}.
/// Optional "base_form" and "euler" (id -> winding) feed Turaev torsion.
struct MorseInput
{
    MorseSystem system;
    CriticalForms forms;
    std::optional<CMatrix> holonomy; // generator image for circle systems
    CMatrix base_form;
    std::map<std::string, int> windings;
};

/// knot.json: {"generators": [..], "relators": [..]} or
/// {"braid": {"strands": n, "word": [..]}}.
KnotPresentation parse_knot(const std::string& text);
ComplexInput parse_complex(const std::string& text);
MorseInput parse_morse(const std::string& text);

/// circle.json: {"L", "lambda": [re, im] or a list of them, "phi": {"kind",
/// "amp"}, "f": {"kind": "cos", "wells"}, "N", "T", "flat_window"}.
struct CircleInput
{
    CircleModel model;
    int grid = 256;
    double T = 0.0;
};
CircleInput parse_circle(const std::string& text);

std::string read_file(const std::string& path);

/// Parses "p0=1,p2=-1" into windings.
std::map<std::string, int> parse_windings(const std::string& spec);

/// Fixed-column result table: experiment, params, value_re, value_im,
/// tolerance, pass. Params are "key=value" joined by ';'.
struct CsvRow
{
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    cplx value;
    double tolerance = 0.0;
    bool pass = true;
};

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
std::string format_number(double v);

} // namespace bltorsion

#endif // BLTORSION_IO_HPP
