#include "tancat/script.hpp"

#include "tancat/ring.hpp"

#include "doctest.h"

#include <cstdlib>

using namespace tancat;

namespace {

// Wall-clock is the only nondeterministic field; zero it for goldens.
std::string normalized(const ScriptReport& r) {
    std::string s = render_report(r);
    for (const std::string& key : {std::string("\"ms\":"), std::string("ms: ")}) {
        size_t p = s.find(key);
        if (p == std::string::npos) continue;
        size_t b = p + key.size(), e = b;
        while (e < s.size() && std::isdigit((unsigned char)s[e])) ++e;
        s = s.substr(0, b) + "0" + s.substr(e);
    }
    return s;
}

}  // namespace

TEST_CASE("syntax and resolution errors exit with code 2") {
    for (const char* bad : {
             "ring R = QQ[x / (x)\nrun tangent R",
             "run tangent R",
             "ring R = QQ[x]\nring R = QQ[y]\nrun tangent R",
             "ring R = QQ[x]\npoint P on R = (1/)\nrun tangent R",
             "ring R = QQ[x]\nrun tangent R --side sideways",
             "ring R = QQ[x]\nrun frobnicate R",
             "ring R = QQ[x]\nrun tangent R\nring S = QQ[y]",
             "ring R = QQ[x]\nmorphism f : R -> R = { }\nrun tangent R",
         }) {
        ScriptReport r = run_script(bad);
        INFO(bad, " -> ", r.error);
        CHECK(r.status == "error");
        CHECK(r.exit_code == 2);
    }
    ScriptReport empty = run_script("# only a comment\n");
    CHECK(empty.exit_code == 2);
}

TEST_CASE("tangent command golden outputs") {
    ScriptReport ring_side =
        run_script("ring R = QQ[x]\nrun tangent R --side ring --format json\n");
    CHECK(ring_side.exit_code == 0);
    CHECK(normalized(ring_side) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"x\",\"eps\"],"
          "\"relations\":[\"eps^2\"]},\"ms\":0}\n");

    // the canonical reduced basis of the cusp-like example's tangent ring
    ScriptReport scheme = run_script(
        "ring R = QQ[x,y] / (x^2 - x*y^2)\nrun tangent R --side scheme --format json\n");
    CHECK(scheme.exit_code == 0);
    CHECK(normalized(scheme) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"x\",\"y\",\"d_x\",\"d_y\"],"
          "\"relations\":[\"y^2*d_x + 2*x*y*d_y - 2*x*d_x\",\"x*y^2 - x^2\","
          "\"x^2*y*d_y - 1/2*x^2*d_x\",\"x^2*y*d_x - 2*x^3*d_y\","
          "\"x^3*d_y^2 - 1/4*x^2*d_x^2\"]},\"ms\":0}\n");
}

TEST_CASE("tangent-space literal coordinates and declared points") {
    ScriptReport smooth = run_script(
        "ring R = QQ[x,y] / (x*y)\nrun tangent-space R (1,1) --format json\n");
    CHECK(smooth.exit_code == 0);
    CHECK(normalized(smooth) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"d_x\",\"d_y\"],"
          "\"relations\":[\"d_x + d_y\"]},\"ms\":0}\n");

    ScriptReport origin = run_script(
        "ring R = QQ[x,y] / (x*y)\npoint P on R = (0, 0)\n"
        "run tangent-space R P --format json\n");
    CHECK(origin.exit_code == 0);
    CHECK(normalized(origin) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"d_x\",\"d_y\"],"
          "\"relations\":[]},\"ms\":0}\n");

    // declared points are strict: (1,1) is not on the variety
    ScriptReport strict = run_script(
        "ring R = QQ[x,y] / (x*y)\npoint P on R = (1, 1)\nrun tangent-space R P\n");
    CHECK(strict.exit_code == 2);
}

TEST_CASE("axioms command passes on both sides") {
    for (const char* side : {"ring", "scheme"}) {
        ScriptReport r = run_script(std::string("ring R = QQ[x,y] / (x*y)\nrun axioms R --side ") +
                                    side + "\n");
        CHECK(r.exit_code == 0);
        CHECK(r.status == "ok");
        REQUIRE(r.axioms.has_value());
        CHECK(r.axioms->all_pass());
    }
}

TEST_CASE("bundle subcommands") {
    std::string header = "ring R = QQ[x]\nmodule M over R = cokernel [x]\n";

    ScriptReport from = run_script(header + "run bundle from-module M --side ring --format json\n");
    CHECK(normalized(from) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"x\",\"u\"],"
          "\"relations\":[\"u^2\",\"x*u\"]},\"ms\":0}\n");

    ScriptReport check = run_script(header + "run bundle check M --side scheme\n");
    CHECK(check.exit_code == 0);
    REQUIRE(check.axioms.has_value());
    CHECK(check.axioms->all_pass());
    CHECK(check.axioms->checks.size() == 19);

    ScriptReport to = run_script(
        "ring R = QQ[x,y] / (x*y)\nmodule M over R = cokernel [x, 0; 0, y^2]\n"
        "run bundle to-module M --side scheme --format json\n");
    CHECK(normalized(to) ==
          "{\"status\":\"ok\",\"result\":{\"vars\":[\"u_1\",\"u_2\"],"
          "\"relations\":[\"x*u_1\",\"y^2*u_2\"]},\"ms\":0}\n");

    ScriptReport derive = run_script(header + "run bundle derive-sum M --side ring\n");
    CHECK(normalized(derive) ==
          "status: ok\nvars: x u u__2\nrelations:\n"
          "  sigma: x |-> x\n  sigma: u |-> u\n  sigma: u__2 |-> u\n"
          "  iota: x |-> x\n  iota: u |-> -u\nms: 0\n");
}

TEST_CASE("vector field and transpose commands") {
    ScriptReport fromd =
        run_script("ring R = QQ[x]\nmorphism D : R -> R = { x |-> x^2 }\n"
                   "run vf from-derivation D\n");
    CHECK(normalized(fromd) ==
          "status: ok\nvars: x\nrelations:\n  x |-> x^2*eps + x\nms: 0\n");

    ScriptReport tod = run_script(
        "ring R = QQ[x]\nring TR = QQ[x,eps] / (eps^2)\n"
        "morphism V : R -> TR = { x |-> x + x^2*eps }\nrun vf to-derivation V\n");
    CHECK(normalized(tod) == "status: ok\nvars: x\nrelations:\n  D(x) = x^2\nms: 0\n");

    ScriptReport bracket = run_script(
        "ring R = QQ[x,y] / (x*y)\nmorphism D1 : R -> R = { x |-> x, y |-> -y }\n"
        "morphism D2 : R -> R = { x |-> x^2, y |-> -x*y }\nrun vf bracket D1 D2\n");
    CHECK(bracket.exit_code == 0);

    // sharp then flat round-trips the same generator data
    ScriptReport shrp = run_script(
        "ring R = QQ[x]\nring S = QQ[y]\nring TS = QQ[y,eps] / (eps^2)\n"
        "morphism F : R -> TS = { x |-> y^2 + 3*y*eps }\nrun transpose sharp F S\n");
    CHECK(normalized(shrp) ==
          "status: ok\nvars: x d_x\nrelations:\n  x |-> y^2\n  d_x |-> 3*y\nms: 0\n");
    ScriptReport flt = run_script(
        "ring R = QQ[x]\nring TR = QQ[x,d_x]\nring S = QQ[y]\n"
        "morphism G : TR -> S = { x |-> y^2, d_x |-> 3*y }\nrun transpose flat G R\n");
    CHECK(normalized(flt) ==
          "status: ok\nvars: x\nrelations:\n  x |-> y^2 + 3*y*eps\nms: 0\n");
}

TEST_CASE("rendered presentations re-parse to equal ideals") {
    for (const char* script :
         {"ring R = QQ[x,y] / (x^2 - x*y^2)\nrun tangent R --side scheme\n",
          "ring R = QQ[x,y,z] / (x^2+y^2+z^2-1)\nrun tangent R --side ring\n"}) {
        ScriptReport r = run_script(script);
        REQUIRE(r.presentation.has_value());
        FPRing reparsed = FPRing::presented(r.presentation->vars, r.presentation->relations);
        // canonical rendering: re-parsing gives the identical reduced basis
        FPRing again(reparsed.vars(), reparsed.groebner());
        CHECK(ideal_equal(reparsed, again));
        std::vector<std::string> rendered;
        for (const auto& g : reparsed.groebner()) rendered.push_back(g.to_string());
        std::vector<std::string> sorted_in = r.presentation->relations;
        std::sort(sorted_in.begin(), sorted_in.end());
        std::sort(rendered.begin(), rendered.end());
        CHECK(sorted_in == rendered);
    }
}

TEST_CASE("json reports are byte-stable across repeated runs") {
    const char* script =
        "ring R = QQ[x,y] / (x*y)\nrun axioms R --side scheme --format json\n";
    CHECK(normalized(run_script(script)) == normalized(run_script(script)));
}

#ifdef TANCAT_CLI_PATH
TEST_CASE("step budget maps to exit code 3 in the binary") {
    std::string cmd = std::string("printf 'ring R = QQ[x,y,z] / (x^2+y^2+z^2-1, x*y-z)\\n"
                                  "run tangent R --side scheme\\n' | TANCAT_STEP_BUDGET=1 ") +
                      TANCAT_CLI_PATH + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CHECK(WEXITSTATUS(rc) == 3);
}
#endif
