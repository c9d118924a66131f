#include "tancat/script.hpp"

#include "tancat/bundle.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <sstream>

namespace tancat {

namespace {

// ---- small string utilities ----------------------------------------

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_ident(const std::string& s) {
    if (s.empty() || (!std::isalpha((unsigned char)s[0]) && s[0] != '_')) return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ScriptError("line " + std::to_string(line) + ": " + what);
}

Rational parse_rational(int line, const std::string& text) {
    std::string t = trim(text);
    size_t i = t[0] == '-' || t[0] == '+' ? 1 : 0;
    bool seen_slash = false, ok = i < t.size();
    for (; i < t.size() && ok; ++i) {
        if (t[i] == '/' && !seen_slash && i + 1 < t.size())
            seen_slash = true;
        else if (!std::isdigit((unsigned char)t[i]))
            ok = false;
    }
    if (!ok) fail(line, "ill-formed rational '" + text + "'");
    return Rational(t);
}

// ---- declarations ---------------------------------------------------

struct Env {
    std::map<std::string, FPRing> rings;
    std::map<std::string, FPModule> modules;
    std::map<std::string, Point> points;
    std::map<std::string, RingMorphism> morphisms;

    void declare(int line, const std::string& name) const {
        if (!is_ident(name)) fail(line, "invalid name '" + name + "'");
        if (rings.count(name) || modules.count(name) || points.count(name) ||
            morphisms.count(name))
            fail(line, "name '" + name + "' already declared");
    }
    const FPRing& ring(int line, const std::string& name) const {
        auto it = rings.find(name);
        if (it == rings.end()) fail(line, "unknown ring '" + name + "'");
        return it->second;
    }
    const FPModule& module(int line, const std::string& name) const {
        auto it = modules.find(name);
        if (it == modules.end()) fail(line, "unknown module '" + name + "'");
        return it->second;
    }
    const RingMorphism& morphism(int line, const std::string& name) const {
        auto it = morphisms.find(name);
        if (it == morphisms.end()) fail(line, "unknown morphism '" + name + "'");
        return it->second;
    }
};

Poly parse_poly(int line, const FPRing& r, const std::string& text) {
    try {
        return r.parse(text);
    } catch (const std::exception& e) {
        fail(line, std::string("in polynomial '") + text + "': " + e.what());
    }
}

// ring NAME = QQ[x, y] / (p, q)
void parse_ring_decl(Env& env, int line, const std::string& rest) {
    size_t eq = rest.find('=');
    if (eq == std::string::npos) fail(line, "expected '=' in ring declaration");
    std::string name = trim(rest.substr(0, eq));
    env.declare(line, name);
    std::string body = trim(rest.substr(eq + 1));
    if (body.rfind("QQ", 0) != 0) fail(line, "ring body must start with QQ[...]");
    size_t lb = body.find('['), rb = body.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        fail(line, "expected QQ[vars]");
    std::vector<std::string> vars;
    std::string varlist = trim(body.substr(lb + 1, rb - lb - 1));
    if (!varlist.empty())
        for (const auto& v : split_on(varlist, ',')) {
            if (!is_ident(v)) fail(line, "invalid variable name '" + v + "'");
            vars.push_back(v);
        }
    std::string tail = trim(body.substr(rb + 1));
    std::vector<Poly> rels;
    if (!tail.empty()) {
        if (tail[0] != '/') fail(line, "unexpected text after variable list: '" + tail + "'");
        std::string inner = trim(tail.substr(1));
        if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
            fail(line, "expected parenthesized relation list after '/'");
        FPRing freering = FPRing::free(vars);
        for (const auto& p : split_on(inner.substr(1, inner.size() - 2), ','))
            rels.push_back(parse_poly(line, freering, p));
    }
    env.rings.emplace(name, FPRing(vars, rels));
}

// module NAME over RING = cokernel [ row ; row ]
void parse_module_decl(Env& env, int line, const std::string& rest) {
    std::vector<std::string> toks = whitespace_tokens(rest);
    if (toks.size() < 4 || toks[1] != "over")
        fail(line, "expected 'module NAME over RING = cokernel [...]'");
    env.declare(line, toks[0]);
    const FPRing& base = env.ring(line, toks[2]);
    size_t eq = rest.find('=');
    if (eq == std::string::npos) fail(line, "expected '=' in module declaration");
    std::string body = trim(rest.substr(eq + 1));
    if (body.rfind("cokernel", 0) != 0) fail(line, "module body must be 'cokernel [...]'");
    std::string mat = trim(body.substr(8));
    if (mat.size() < 2 || mat.front() != '[' || mat.back() != ']')
        fail(line, "expected bracketed row list");
    std::vector<ModElem> rows;
    size_t width = 0;
    for (const auto& rowtext : split_on(mat.substr(1, mat.size() - 2), ';')) {
        ModElem row;
        for (const auto& p : split_on(rowtext, ','))
            row.push_back(parse_poly(line, base, p));
        if (width == 0)
            width = row.size();
        else if (row.size() != width)
            fail(line, "rows have different lengths");
        rows.push_back(std::move(row));
    }
    std::vector<std::string> gens, taken = base.vars();
    for (size_t k = 0; k < width; ++k) {
        std::string g = fresh_name(
            taken, width == 1 ? "u" : "u_" + std::to_string(k + 1));
        gens.push_back(g);
        taken.push_back(g);
    }
    env.modules.emplace(toks[0], FPModule(base, gens, rows));
}

// point NAME on RING = (c, c)
void parse_point_decl(Env& env, int line, const std::string& rest) {
    std::vector<std::string> toks = whitespace_tokens(rest);
    if (toks.size() < 3 || toks[1] != "on")
        fail(line, "expected 'point NAME on RING = (...)'");
    env.declare(line, toks[0]);
    const FPRing& base = env.ring(line, toks[2]);
    size_t eq = rest.find('=');
    if (eq == std::string::npos) fail(line, "expected '=' in point declaration");
    std::string body = trim(rest.substr(eq + 1));
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
        fail(line, "expected parenthesized coordinates");
    std::vector<Rational> coords;
    std::string inner = trim(body.substr(1, body.size() - 2));
    if (!inner.empty())
        for (const auto& c : split_on(inner, ',')) coords.push_back(parse_rational(line, c));
    env.points.emplace(toks[0], Point(base, coords));
}

// morphism NAME : R -> S = { x |-> p, y |-> q }
void parse_morphism_decl(Env& env, int line, const std::string& rest) {
    size_t colon = rest.find(':');
    size_t arrow = rest.find("->");
    size_t eq = rest.find('=', arrow == std::string::npos ? 0 : arrow + 2);
    if (colon == std::string::npos || arrow == std::string::npos || eq == std::string::npos)
        fail(line, "expected 'morphism NAME : R -> S = { ... }'");
    std::string name = trim(rest.substr(0, colon));
    env.declare(line, name);
    const FPRing& dom = env.ring(line, trim(rest.substr(colon + 1, arrow - colon - 1)));
    const FPRing& cod = env.ring(line, trim(rest.substr(arrow + 2, eq - arrow - 2)));
    std::string body = trim(rest.substr(eq + 1));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        fail(line, "expected braced image list");
    std::map<std::string, Poly> images;
    std::string inner = trim(body.substr(1, body.size() - 2));
    if (!inner.empty())
        for (const auto& entry : split_on(inner, ',')) {
            size_t m = entry.find("|->");
            if (m == std::string::npos) fail(line, "expected 'ident |-> poly'");
            std::string v = trim(entry.substr(0, m));
            if (images.count(v)) fail(line, "duplicate image for '" + v + "'");
            images.emplace(v, parse_poly(line, cod, entry.substr(m + 3)));
        }
    for (const auto& v : dom.vars())
        if (!images.count(v)) fail(line, "no image given for domain variable '" + v + "'");
    if (images.size() != dom.vars().size())
        fail(line, "image list names a variable outside the domain");
    env.morphisms.emplace(name, RingMorphism::by_names(dom, cod, images));
}

// ---- rendering helpers ---------------------------------------------

Presentation present_ring(const FPRing& r) {
    Presentation p;
    p.vars = r.vars();
    std::vector<Poly> gb = r.groebner();
    std::sort(gb.begin(), gb.end(), [](const Poly& a, const Poly& b) {
        return GrevlexLess{}(a.leading_monomial(), b.leading_monomial());
    });
    for (const auto& g : gb) p.relations.push_back(g.to_string());
    return p;
}

Presentation present_module(const FPModule& m) {
    Presentation p;
    p.vars = m.gens();
    for (const auto& row : m.relations()) {
        std::string s;
        for (size_t k = 0; k < row.size(); ++k) {
            if (row[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string c = row[k].to_string();
            if (row[k].terms().size() > 1) c = "(" + c + ")";
            s += c + "*" + m.gens()[k];
        }
        p.relations.push_back(s.empty() ? "0" : s);
    }
    return p;
}

void append_images(Presentation& p, const RingMorphism& f, const std::string& prefix) {
    const auto& vars = f.domain().vars();
    for (size_t i = 0; i < vars.size(); ++i)
        p.relations.push_back(prefix + vars[i] + " |-> " + f.images()[i].to_string());
}

Presentation present_morphism(const RingMorphism& f) {
    Presentation p;
    p.vars = f.domain().vars();
    append_images(p, f, "");
    return p;
}

// ---- the run command ------------------------------------------------

struct RunCommand {
    int line = 0;
    std::vector<std::string> args;  // command words + positional args
    std::string side = "ring";
    std::string format = "text";
};

RunCommand parse_run(int line, const std::string& rest) {
    RunCommand cmd;
    cmd.line = line;
    std::vector<std::string> toks = whitespace_tokens(rest);
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == "--side" || toks[i] == "--format") {
            if (i + 1 >= toks.size()) fail(line, "missing value for " + toks[i]);
            std::string v = toks[i + 1];
            if (toks[i] == "--side") {
                if (v != "ring" && v != "scheme") fail(line, "unknown side '" + v + "'");
                cmd.side = v;
            } else {
                if (v != "text" && v != "json") fail(line, "unknown format '" + v + "'");
                cmd.format = v;
            }
            ++i;
        } else {
            cmd.args.push_back(toks[i]);
        }
    }
    if (cmd.args.empty()) fail(line, "empty run command");
    return cmd;
}

const DualTower& require_dual_codomain(int line, const RingMorphism& f, const DualTower& t) {
    if (f.codomain() != t.ring)
        fail(line, "codomain is not the dual-numbers ring of the expected base");
    return t;
}

void execute(const Env& env, const RunCommand& cmd, ScriptReport& out) {
    const int line = cmd.line;
    const auto& a = cmd.args;
    auto need = [&](size_t n) {
        if (a.size() != n) fail(line, "wrong number of arguments for '" + a[0] + "'");
    };

    if (a[0] == "tangent") {
        need(2);
        const FPRing& r = env.ring(line, a[1]);
        out.presentation = present_ring(cmd.side == "ring" ? dual_numbers(r).ring
                                                           : kahler_tangent(r).ring);
    } else if (a[0] == "tangent-space") {
        if (a.size() < 3) fail(line, "tangent-space needs a ring and a point");
        const FPRing& r = env.ring(line, a[1]);
        // remaining args either name a declared point or spell literal
        // coordinates "(c, c)" (the formal-evaluation path: the point
        // need not lie on the variety)
        std::string rest;
        for (size_t i = 2; i < a.size(); ++i) rest += a[i];
        TangentSpace ts = [&] {
            if (rest.front() == '(') {
                if (rest.back() != ')') fail(line, "unterminated coordinate tuple");
                std::vector<Rational> coords;
                std::string inner = rest.substr(1, rest.size() - 2);
                if (!trim(inner).empty())
                    for (const auto& c : split_on(inner, ','))
                        coords.push_back(parse_rational(line, c));
                return tangent_space_at(r, coords);
            }
            auto it = env.points.find(rest);
            if (it == env.points.end()) fail(line, "unknown point '" + rest + "'");
            if (it->second.ring() != r) fail(line, "point lies on a different ring");
            return tangent_space_at(r, it->second);
        }();
        out.presentation = present_ring(ts.ring);
    } else if (a[0] == "axioms") {
        need(2);
        const FPRing& r = env.ring(line, a[1]);
        out.axioms = cmd.side == "ring" ? check_tangent_axioms(r)
                                        : check_costructure_axioms(r);
    } else if (a[0] == "bundle") {
        if (a.size() < 2) fail(line, "bundle needs a subcommand");
        need(3);
        const FPModule& m = env.module(line, a[2]);
        DiffBundle b = cmd.side == "ring" ? mod_to_bundle_ring(m) : mod_to_bundle_affine(m);
        if (a[1] == "from-module") {
            out.presentation = present_ring(b.total());
        } else if (a[1] == "check") {
            out.axioms = check_diff_bundle(b);
        } else if (a[1] == "to-module") {
            out.presentation = present_module(
                cmd.side == "ring" ? bundle_to_mod_ring(b) : bundle_to_mod_affine(b));
        } else if (a[1] == "derive-sum") {
            DerivedSum d = derive_sum_and_negative_via_rosicky(b);
            Presentation p;
            p.vars = d.sigma.domain().vars();
            append_images(p, d.sigma, "sigma: ");
            append_images(p, d.iota, "iota: ");
            out.presentation = std::move(p);
        } else {
            fail(line, "unknown bundle subcommand '" + a[1] + "'");
        }
    } else if (a[0] == "vf") {
        if (a.size() < 2) fail(line, "vf needs a subcommand");
        if (a[1] == "to-derivation") {
            need(3);
            const RingMorphism& v = env.morphism(line, a[2]);
            DualTower t = dual_numbers(v.domain());
            require_dual_codomain(line, v, t);
            Derivation d = vf_to_derivation(make_vector_field(v.domain(), v));
            Presentation p;
            p.vars = v.domain().vars();
            for (size_t i = 0; i < p.vars.size(); ++i)
                p.relations.push_back("D(" + p.vars[i] + ") = " + d.images()[i].to_string());
            out.presentation = std::move(p);
        } else if (a[1] == "from-derivation" || a[1] == "bracket") {
            need(a[1] == "bracket" ? 4u : 3u);
            auto as_derivation = [&](const std::string& name) {
                const RingMorphism& f = env.morphism(line, name);
                if (f.domain() != f.codomain())
                    fail(line, "derivation '" + name + "' must be an endo-assignment");
                return Derivation(f.domain(), f.images());
            };
            if (a[1] == "from-derivation") {
                VectorFieldDual v = derivation_to_vf(as_derivation(a[2]));
                out.presentation = present_morphism(v.section);
            } else {
                Derivation br = lie_bracket(as_derivation(a[2]), as_derivation(a[3]));
                Presentation p;
                p.vars = br.ring().vars();
                for (size_t i = 0; i < p.vars.size(); ++i)
                    p.relations.push_back("D(" + p.vars[i] +
                                          ") = " + br.images()[i].to_string());
                out.presentation = std::move(p);
            }
        } else {
            fail(line, "unknown vf subcommand '" + a[1] + "'");
        }
    } else if (a[0] == "transpose") {
        need(4);
        if (a[1] == "sharp") {
            // F : R -> Tbar(S), S given by name; emits F#: T(R) -> S
            const RingMorphism& f = env.morphism(line, a[2]);
            const FPRing& s = env.ring(line, a[3]);
            DualTower tcod = dual_numbers(s);
            require_dual_codomain(line, f, tcod);
            out.presentation =
                present_morphism(sharp(f, kahler_tangent(f.domain()), tcod));
        } else if (a[1] == "flat") {
            // G : T(R) -> S with R given by name; emits Gb: R -> Tbar(S)
            const RingMorphism& g = env.morphism(line, a[2]);
            const FPRing& r = env.ring(line, a[3]);
            KahlerTangent tr = kahler_tangent(r);
            if (g.domain() != tr.ring)
                fail(line, "domain is not the Kahler tangent ring of '" + a[3] + "'");
            out.presentation = present_morphism(flat(g, tr, dual_numbers(g.codomain())));
        } else {
            fail(line, "unknown transpose subcommand '" + a[1] + "'");
        }
    } else {
        fail(line, "unknown command '" + a[0] + "'");
    }

    if (out.axioms && !out.axioms->all_pass()) {
        out.status = "axiom-failure";
        out.exit_code = 1;
    }
}

}  // namespace

ScriptReport run_script(const std::string& text) {
    ScriptReport out;
    out.status = "ok";
    auto t0 = std::chrono::steady_clock::now();
    try {
        Env env;
        std::optional<RunCommand> cmd;
        int lineno = 0;
        std::string line;
        std::istringstream in(text);
        while (std::getline(in, line)) {
            ++lineno;
            size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (cmd) fail(lineno, "declarations after the run command");
            std::vector<std::string> toks = whitespace_tokens(line);
            std::string rest = trim(line.substr(toks[0].size()));
            if (toks[0] == "ring")
                parse_ring_decl(env, lineno, rest);
            else if (toks[0] == "module")
                parse_module_decl(env, lineno, rest);
            else if (toks[0] == "point")
                parse_point_decl(env, lineno, rest);
            else if (toks[0] == "morphism")
                parse_morphism_decl(env, lineno, rest);
            else if (toks[0] == "run")
                cmd = parse_run(lineno, rest);
            else
                fail(lineno, "unknown declaration '" + toks[0] + "'");
        }
        if (!cmd) throw ScriptError("script has no run command");
        out.format = cmd->format;
        execute(env, *cmd, out);
    } catch (const StepBudgetExceeded& e) {
        out.status = "error";
        out.error = e.what();
        out.exit_code = 3;
    } catch (const BundleAxiomError& e) {
        out.status = "axiom-failure";
        out.error = e.what();
        out.exit_code = 1;
    } catch (const std::exception& e) {
        out.status = "error";
        out.error = e.what();
        out.exit_code = 2;
    }
    out.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    return out;
}

std::string render_report(const ScriptReport& r) {
    if (r.format == "json") {
        nlohmann::ordered_json j;
        j["status"] = r.status;
        if (r.presentation) {
            j["result"]["vars"] = r.presentation->vars;
            j["result"]["relations"] = r.presentation->relations;
        } else if (r.axioms) {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& c : r.axioms->checks) {
                nlohmann::ordered_json e;
                e["id"] = c.id;
                e["pass"] = c.pass;
                if (!c.pass) e["witness"] = c.witness;
                arr.push_back(std::move(e));
            }
            j["result"]["axioms"] = std::move(arr);
        }
        if (!r.error.empty()) j["error"] = r.error;
        j["ms"] = r.ms;
        return j.dump() + "\n";
    }
    std::string s = "status: " + r.status + "\n";
    if (!r.error.empty()) s += "error: " + r.error + "\n";
    if (r.presentation) {
        s += "vars:";
        for (const auto& v : r.presentation->vars) s += " " + v;
        s += "\nrelations:\n";
        for (const auto& rel : r.presentation->relations) s += "  " + rel + "\n";
    } else if (r.axioms) {
        s += "axioms:\n";
        for (const auto& c : r.axioms->checks) {
            s += "  " + c.id + ": " + (c.pass ? "pass" : "FAIL " + c.witness) + "\n";
        }
    }
    s += "ms: " + std::to_string(r.ms) + "\n";
    return s;
}

}  // namespace tancat
