/*
 * script.hpp
 * ----------
 * Text-DSL front end: parse ring/module/point/morphism declarations and
 * a single run command, execute it against the engine, and render the
 * result as text or byte-stable JSON.
 *
 * Grammar (line oriented, '#' comments):
 *   ring  NAME = QQ[ident(, ident)*] / (poly(, poly)*)   -- quotient optional
 *   module NAME over RINGNAME = cokernel [ row(; row)* ] -- row = poly(, poly)*
 *   point NAME on RINGNAME = (rational(, rational)*)
 *   morphism NAME : RINGNAME -> RINGNAME = { ident |-> poly(, ident |-> poly)* }
 *   run COMMAND arg* [--side ring|scheme] [--format text|json]
 *
 * Commands: tangent, tangent-space, axioms, bundle {from-module | check |
 * to-module | derive-sum}, vf {to-derivation | from-derivation | bracket},
 * transpose {sharp | flat}.
 *
 * Ring presentations are rendered from the reduced Groebner basis sorted
 * by the monomial order, so output is canonical.  Morphisms render as
 * "v |-> image" lines in the relations array.
 */
#pragma once

#include "tancat/report.hpp"

#include <optional>

namespace tancat {

// Input-level failure: syntax, unresolved names, signature mismatches.
struct ScriptError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Presentation {
    std::vector<std::string> vars;
    std::vector<std::string> relations;
};

struct ScriptReport {
    std::string status;  // ok | axiom-failure | error
    int exit_code = 0;   // 0 ok, 1 axiom failure, 2 input error, 3 budget
    std::optional<Presentation> presentation;
    std::optional<AxiomReport> axioms;
    std::string error;   // set when status == "error"
    long long ms = 0;
    std::string format = "text";
};

// Parse and execute; never throws — failures come back as reports with
// the matching status and exit code.
ScriptReport run_script(const std::string& text);

std::string render_report(const ScriptReport& r);

}  // namespace tancat
