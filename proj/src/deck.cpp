#include "isc/deck.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "isc/error.hpp"
#include "isc/numfmt.hpp"

namespace isc {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.tokens.emplace_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

const std::vector<std::string> kSections = {
    "GRID",      "ROCK",        "COMPONENTS",  "KVALUES", "DENSITY", "VISCOSITY", "ENTHALPY",
    "REACTIONS", "RELPERM-SWT", "RELPERM-SLT", "INIT",    "WELL",    "SCHEDULE",  "SOLVER"};

const std::set<std::string> kRequired = {"GRID",     "ROCK",        "COMPONENTS",  "KVALUES",
                                         "DENSITY",  "VISCOSITY",   "ENTHALPY",    "RELPERM-SWT",
                                         "RELPERM-SLT", "INIT",     "SCHEDULE"};

// keyword -> line, used to locate semantic errors found after parsing
struct LineMap {
    std::map<std::string, int> key;
    std::vector<int> well;

    int at(const std::string& k) const
    {
        const auto it = key.find(k);
        return it == key.end() ? 0 : it->second;
    }
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg, int line)
{
    throw Error(code, msg, line);
}

// Raw array with the line it came from; expanded once dimensions are known.
struct RawArray {
    std::vector<double> values;
    int line = 0;
    bool set = false;
};

class Parser {
public:
    Deck parse(std::string_view text)
    {
        std::string section;
        for (const Line& line : tokenize(text)) {
            const std::string& head = line.tokens.front();
            if (head.size() > 1 && head[0] == '*') {
                const std::string name = head.substr(1);
                const bool well_keyword = name == "WELL" && section == "WELL" && line.tokens.size() > 1;
                if (!well_keyword &&
                    std::find(kSections.begin(), kSections.end(), name) != kSections.end()) {
                    if (line.tokens.size() != 1)
                        fail(ErrorCode::syntax, "section header *" + name + " takes no values",
                             line.number);
                    if (!seen_.insert(name).second)
                        fail(ErrorCode::syntax, "section *" + name + " appears twice", line.number);
                    section = name;
                    lines_.key["section:" + name] = line.number;
                    continue;
                }
            }
            if (section.empty())
                fail(ErrorCode::syntax, "content before the first section header", line.number);
            dispatch(section, line);
        }
        for (const std::string& req : kRequired)
            if (!seen_.count(req))
                fail(ErrorCode::missing_section, "required section *" + req + " is missing", 0);
        finalize();
        validate(deck_, lines_);
        return std::move(deck_);
    }

    static void validate(const Deck& deck, const LineMap& lines);

private:
    Deck deck_;
    std::set<std::string> seen_;
    LineMap lines_;
    RawArray dx_, dy_, dz_, permx_, permy_, permz_, por_;
    bool have_dimens_ = false;

    // ---------------------------------------------------------------- helpers

    static const std::string& keyword_of(const Line& line)
    {
        return line.tokens.front();
    }

    static std::string key(const Line& line)
    {
        const std::string& h = line.tokens.front();
        return h[0] == '*' ? h.substr(1) : h;
    }

    static void expect_count(const Line& line, std::size_t lo, std::size_t hi)
    {
        const std::size_t n = line.tokens.size() - 1;
        if (n < lo || n > hi) {
            std::ostringstream os;
            os << keyword_of(line) << " expects ";
            if (lo == hi) os << lo;
            else os << lo << ".." << hi;
            os << " values, got " << n;
            fail(ErrorCode::syntax, os.str(), line.number);
        }
    }

    static double num(const Line& line, std::size_t idx)
    {
        if (idx >= line.tokens.size())
            fail(ErrorCode::syntax, keyword_of(line) + ": missing value", line.number);
        const auto v = parse_double(line.tokens[idx]);
        if (!v)
            fail(ErrorCode::syntax, "'" + line.tokens[idx] + "' is not a finite number", line.number);
        return *v;
    }

    static int integer(const Line& line, std::size_t idx)
    {
        if (idx >= line.tokens.size())
            fail(ErrorCode::syntax, keyword_of(line) + ": missing value", line.number);
        const auto v = parse_integer(line.tokens[idx]);
        if (!v || *v < -1000000000L || *v > 1000000000L)
            fail(ErrorCode::syntax, "'" + line.tokens[idx] + "' is not an integer", line.number);
        return static_cast<int>(*v);
    }

    static const std::string& word(const Line& line, std::size_t idx)
    {
        if (idx >= line.tokens.size())
            fail(ErrorCode::syntax, keyword_of(line) + ": missing value", line.number);
        return line.tokens[idx];
    }

    // values from token `from` on, with n*v repeats
    static std::vector<double> array(const Line& line, std::size_t from)
    {
        std::vector<double> out;
        for (std::size_t t = from; t < line.tokens.size(); ++t) {
            const std::string& tok = line.tokens[t];
            const auto star = tok.find('*');
            if (star != std::string::npos && star > 0) {
                const auto n = parse_integer(std::string_view(tok).substr(0, star));
                const auto v = parse_double(std::string_view(tok).substr(star + 1));
                if (!n || !v || *n < 1 || *n > 100000000L)
                    fail(ErrorCode::syntax, "bad repeat token '" + tok + "'", line.number);
                out.insert(out.end(), static_cast<std::size_t>(*n), *v);
            } else {
                const auto v = parse_double(tok);
                if (!v) fail(ErrorCode::syntax, "'" + tok + "' is not a finite number", line.number);
                out.push_back(*v);
            }
        }
        if (out.empty()) fail(ErrorCode::syntax, keyword_of(line) + ": no values", line.number);
        return out;
    }

    static void set_raw(RawArray& raw, const Line& line)
    {
        raw.values = array(line, 1);
        raw.line = line.number;
        raw.set = true;
    }

    ComponentProps& component(const Line& line, std::size_t idx)
    {
        const std::string& name = word(line, idx);
        for (ComponentProps& c : deck_.fluid.comps)
            if (c.name == name) return c;
        fail(ErrorCode::non_physical_value, "unknown component '" + name + "'", line.number);
    }

    [[noreturn]] static void unknown(const Line& line, const std::string& section)
    {
        fail(ErrorCode::unknown_keyword,
             "'" + keyword_of(line) + "' is not a keyword of section *" + section, line.number);
    }

    void note(const Line& line)
    {
        lines_.key.emplace(key(line), line.number);
    }

    // ---------------------------------------------------------------- sections

    void dispatch(const std::string& section, const Line& line)
    {
        const bool is_keyword = line.tokens.front().size() > 1 && line.tokens.front()[0] == '*';
        if (section == "RELPERM-SWT" || section == "RELPERM-SLT") {
            if (is_keyword) unknown(line, section);
            table_row(section == "RELPERM-SWT" ? deck_.swt : deck_.slt, line);
            return;
        }
        if (!is_keyword) unknown(line, section);
        note(line);
        if (section == "GRID") grid(line);
        else if (section == "ROCK") rock(line);
        else if (section == "COMPONENTS") components(line);
        else if (section == "KVALUES") kvalues(line);
        else if (section == "DENSITY") density(line);
        else if (section == "VISCOSITY") viscosity(line);
        else if (section == "ENTHALPY") enthalpy(line);
        else if (section == "REACTIONS") reactions(line);
        else if (section == "INIT") init(line);
        else if (section == "WELL") well(line);
        else if (section == "SCHEDULE") schedule(line);
        else if (section == "SOLVER") solver(line);
    }

    void grid(const Line& line)
    {
        const std::string k = key(line);
        GridSpec& g = deck_.grid;
        if (k == "DIMENS") {
            expect_count(line, 3, 3);
            g.nx = integer(line, 1);
            g.ny = integer(line, 2);
            g.nz = integer(line, 3);
            if (g.nx < 1 || g.ny < 1 || g.nz < 1)
                fail(ErrorCode::non_physical_value, "cell counts must be >= 1", line.number);
            if (static_cast<long>(g.nx) * g.ny * g.nz > 50000000L)
                fail(ErrorCode::non_physical_value, "grid too large", line.number);
            have_dimens_ = true;
        } else if (k == "DX") set_raw(dx_, line);
        else if (k == "DY") set_raw(dy_, line);
        else if (k == "DZ") set_raw(dz_, line);
        else if (k == "TOPS") {
            expect_count(line, 1, 1);
            g.top = num(line, 1);
        } else unknown(line, "GRID");
    }

    void rock(const Line& line)
    {
        const std::string k = key(line);
        RockSpec& r = deck_.rock;
        auto scalar = [&](double& dst) {
            expect_count(line, 1, 1);
            dst = num(line, 1);
        };
        if (k == "PERMX") set_raw(permx_, line);
        else if (k == "PERMY") set_raw(permy_, line);
        else if (k == "PERMZ") set_raw(permz_, line);
        else if (k == "POR") set_raw(por_, line);
        else if (k == "CPOR") scalar(r.cpor);
        else if (k == "CTPOR") scalar(r.ctpor);
        else if (k == "CPTPOR") scalar(r.cptpor);
        else if (k == "POROSITY_MODEL") {
            expect_count(line, 1, 1);
            const std::string& m = word(line, 1);
            if (m == "linear") r.model = PorosityModel::linear;
            else if (m == "nonlinear") r.model = PorosityModel::nonlinear;
            else fail(ErrorCode::syntax, "porosity model must be linear or nonlinear", line.number);
        } else if (k == "ROCKCP") {
            expect_count(line, 1, 2);
            r.cp1 = num(line, 1);
            r.cp2 = line.tokens.size() > 2 ? num(line, 2) : 0.0;
        } else if (k == "THCONW") scalar(r.k_water);
        else if (k == "THCONO") scalar(r.k_oil);
        else if (k == "THCONG") scalar(r.k_gas);
        else if (k == "THCONR") scalar(r.k_rock);
        else if (k == "THCONC") scalar(r.k_coke);
        else if (k == "HEATLOSS") {
            expect_count(line, 3, 3);
            r.heat_loss.enabled = true;
            r.heat_loss.k_ob = num(line, 1);
            r.heat_loss.d = num(line, 2);
            r.heat_loss.rho = num(line, 3);
        } else unknown(line, "ROCK");
    }

    void components(const Line& line)
    {
        const std::string k = key(line);
        if (k == "REFCOND") {
            expect_count(line, 2, 2);
            deck_.fluid.p_ref = num(line, 1);
            deck_.fluid.t_ref = num(line, 2);
        } else if (k == "COMP") {
            expect_count(line, 3, 5);
            ComponentProps c;
            c.name = word(line, 1);
            for (const ComponentProps& other : deck_.fluid.comps)
                if (other.name == c.name)
                    fail(ErrorCode::syntax, "component '" + c.name + "' declared twice", line.number);
            const std::string& cls = word(line, 2);
            if (cls == "water") c.phase_class = PhaseClass::water;
            else if (cls == "oil") c.phase_class = PhaseClass::oil;
            else if (cls == "gas") c.phase_class = PhaseClass::gas;
            else if (cls == "solid") c.phase_class = PhaseClass::solid;
            else fail(ErrorCode::syntax, "phase class must be water|oil|gas|solid", line.number);
            c.M = num(line, 3);
            if (line.tokens.size() > 4) {
                expect_count(line, 5, 5);
                c.p_crit = num(line, 4);
                c.t_crit = num(line, 5);
            }
            if (deck_.fluid.comps.size() >= static_cast<std::size_t>(kMaxComponents))
                fail(ErrorCode::dimension_mismatch, "too many components", line.number);
            deck_.fluid.comps.push_back(c);
            lines_.key["COMP:" + c.name] = line.number;
        } else unknown(line, "COMPONENTS");
    }

    void kvalues(const Line& line)
    {
        if (key(line) != "KV") unknown(line, "KVALUES");
        expect_count(line, 6, 6);
        ComponentProps& c = component(line, 1);
        c.kv1 = num(line, 2);
        c.kv2 = num(line, 3);
        c.kv3 = num(line, 4);
        c.kv4 = num(line, 5);
        c.kv5 = num(line, 6);
    }

    void density(const Line& line)
    {
        if (key(line) != "DENS") unknown(line, "DENSITY");
        expect_count(line, 2, 6);
        ComponentProps& c = component(line, 1);
        c.rho_ref = num(line, 2);
        c.cp = line.tokens.size() > 3 ? num(line, 3) : 0.0;
        c.ct1 = line.tokens.size() > 4 ? num(line, 4) : 0.0;
        c.ct2 = line.tokens.size() > 5 ? num(line, 5) : 0.0;
        c.cpt = line.tokens.size() > 6 ? num(line, 6) : 0.0;
    }

    void viscosity(const Line& line)
    {
        const std::string k = key(line);
        expect_count(line, 3, 3);
        if (k == "VISL") {
            ComponentProps& c = component(line, 1);
            c.avisc = num(line, 2);
            c.bvisc = num(line, 3);
        } else if (k == "VISG") {
            ComponentProps& c = component(line, 1);
            c.avg = num(line, 2);
            c.bvg = num(line, 3);
        } else unknown(line, "VISCOSITY");
    }

    void enthalpy(const Line& line)
    {
        const std::string k = key(line);
        if (k == "CPG") {
            expect_count(line, 2, 5);
            ComponentProps& c = component(line, 1);
            c.cpg1 = num(line, 2);
            c.cpg2 = line.tokens.size() > 3 ? num(line, 3) : 0.0;
            c.cpg3 = line.tokens.size() > 4 ? num(line, 4) : 0.0;
            c.cpg4 = line.tokens.size() > 5 ? num(line, 5) : 0.0;
        } else if (k == "HVAP") {
            expect_count(line, 3, 3);
            ComponentProps& c = component(line, 1);
            c.hvr = num(line, 2);
            c.ev = num(line, 3);
        } else if (k == "CPSOLID") {
            expect_count(line, 2, 2);
            ComponentProps& c = component(line, 1);
            c.cp_solid = num(line, 2);
        } else unknown(line, "ENTHALPY");
    }

    void reactions(const Line& line)
    {
        const std::string k = key(line);
        ReactionSetSpec& rs = deck_.reactions;
        if (k == "CCMAX") {
            expect_count(line, 1, 1);
            rs.c_cmax = num(line, 1);
        } else if (k == "STOICH_TOL") {
            expect_count(line, 1, 1);
            rs.stoich_tol = num(line, 1);
        } else if (k == "REACTION") {
            expect_count(line, 2, 2);
            ReactionSpec r;
            r.name = word(line, 1);
            const std::string& law = word(line, 2);
            if (law == "gas-oil") r.law = RateLaw::gas_oil;
            else if (law == "gas-solid") r.law = RateLaw::gas_solid;
            else if (law == "cracking") r.law = RateLaw::cracking;
            else fail(ErrorCode::syntax, "rate law must be gas-oil|gas-solid|cracking", line.number);
            if (rs.reactions.size() >= static_cast<std::size_t>(kMaxReactions))
                fail(ErrorCode::dimension_mismatch, "too many reactions", line.number);
            rs.reactions.push_back(r);
            lines_.key["REACTION:" + r.name] = line.number;
        } else if (k == "RATE") {
            expect_count(line, 3, 3);
            if (rs.reactions.empty())
                fail(ErrorCode::syntax, "*RATE before any *REACTION", line.number);
            ReactionSpec& r = rs.reactions.back();
            r.A = num(line, 1);
            r.Ea = num(line, 2);
            r.H = num(line, 3);
        } else if (k == "STOICH") {
            expect_count(line, 2, 2);
            if (rs.reactions.empty())
                fail(ErrorCode::syntax, "*STOICH before any *REACTION", line.number);
            const double s = num(line, 2);
            if (s == 0.0) fail(ErrorCode::non_physical_value, "zero stoichiometric coefficient", line.number);
            rs.reactions.back().stoich.emplace_back(word(line, 1), s);
        } else unknown(line, "REACTIONS");
    }

    static void table_row(SatTable& t, const Line& line)
    {
        if (line.tokens.size() != 3 && line.tokens.size() != 4)
            fail(ErrorCode::syntax, "table rows need 3 or 4 numbers", line.number);
        t.s.push_back(num(line, 0));
        t.kr.push_back(num(line, 1));
        t.kro.push_back(num(line, 2));
        t.pc.push_back(line.tokens.size() == 4 ? num(line, 3) : 0.0);
    }

    void init(const Line& line)
    {
        const std::string k = key(line);
        InitSpec& in = deck_.init;
        if (k == "PRES") {
            expect_count(line, 1, 1);
            in.p = num(line, 1);
        } else if (k == "TEMP") {
            expect_count(line, 1, 1);
            in.t = num(line, 1);
        } else if (k == "SAT") {
            expect_count(line, 3, 3);
            in.sw = num(line, 1);
            in.so = num(line, 2);
            in.sg = num(line, 3);
        } else if (k == "XOIL") {
            in.x = array(line, 1);
        } else if (k == "YGAS") {
            in.y = array(line, 1);
        } else if (k == "CONC") {
            expect_count(line, 1, 1);
            in.cc = num(line, 1);
        } else unknown(line, "INIT");
    }

    WellSpec& current_well(const Line& line)
    {
        if (deck_.wells.empty())
            fail(ErrorCode::syntax, keyword_of(line) + " before any *WELL", line.number);
        return deck_.wells.back();
    }

    PerfSpec& current_perf(const Line& line)
    {
        WellSpec& w = current_well(line);
        if (w.perfs.empty())
            fail(ErrorCode::syntax, keyword_of(line) + " before any *PERF", line.number);
        return w.perfs.back();
    }

    static RateUnit rate_unit(const Line& line, std::size_t idx)
    {
        const std::string& u = word(line, idx);
        if (u == "lbmol/day") return RateUnit::lbmol_per_day;
        if (u == "ft3/day") return RateUnit::ft3_per_day;
        if (u == "ft3/hr") return RateUnit::ft3_per_hr;
        fail(ErrorCode::syntax, "rate unit must be lbmol/day|ft3/day|ft3/hr", line.number);
    }

    void well(const Line& line)
    {
        const std::string k = key(line);
        if (k == "WELL") {
            expect_count(line, 2, 2);
            WellSpec w;
            w.name = word(line, 1);
            const std::string& kind = word(line, 2);
            if (kind == "injector") w.kind = WellKind::injector;
            else if (kind == "producer") w.kind = WellKind::producer;
            else fail(ErrorCode::syntax, "well kind must be injector|producer", line.number);
            deck_.wells.push_back(w);
            lines_.well.push_back(line.number);
        } else if (k == "PERF") {
            expect_count(line, 3, 3);
            PerfSpec p;
            p.i = integer(line, 1);
            p.j = integer(line, 2);
            p.k = integer(line, 3);
            current_well(line).perfs.push_back(p);
        } else if (k == "WI") {
            expect_count(line, 1, 1);
            current_perf(line).wi = num(line, 1);
        } else if (k == "RW") {
            expect_count(line, 1, 1);
            current_perf(line).rw = num(line, 1);
        } else if (k == "SKIN") {
            expect_count(line, 1, 1);
            current_perf(line).skin = num(line, 1);
        } else if (k == "CONTROL") {
            WellSpec& w = current_well(line);
            const std::string& kind = word(line, 1);
            if (kind == "bhp") {
                expect_count(line, 2, 2);
                w.control = ControlKind::bhp;
                w.target = num(line, 2);
            } else if (kind == "rate") {
                expect_count(line, 4, 4);
                w.control = ControlKind::phase_rate;
                const std::string& ph = word(line, 2);
                if (ph == "water") w.phase = Phase::water;
                else if (ph == "oil") w.phase = Phase::oil;
                else if (ph == "gas") w.phase = Phase::gas;
                else fail(ErrorCode::syntax, "phase must be water|oil|gas", line.number);
                w.target = num(line, 3);
                w.unit = rate_unit(line, 4);
            } else if (kind == "total") {
                expect_count(line, 3, 3);
                w.control = ControlKind::total_rate;
                w.target = num(line, 2);
                w.unit = rate_unit(line, 3);
            } else {
                fail(ErrorCode::syntax, "control must be bhp|rate|total", line.number);
            }
        } else if (k == "RATE_CONDITIONS") {
            expect_count(line, 1, 1);
            const std::string& c = word(line, 1);
            WellSpec& w = current_well(line);
            if (c == "standard") w.conditions = RateConditions::standard;
            else if (c == "reservoir") w.conditions = RateConditions::reservoir;
            else fail(ErrorCode::syntax, "rate conditions must be standard|reservoir", line.number);
        } else if (k == "INJECT") {
            if (line.tokens.size() < 3 || line.tokens.size() % 2 == 0)
                fail(ErrorCode::syntax, "*INJECT expects component/fraction pairs", line.number);
            WellSpec& w = current_well(line);
            w.inject.clear();
            for (std::size_t t = 1; t + 1 < line.tokens.size(); t += 2)
                w.inject.emplace_back(line.tokens[t], num(line, t + 1));
        } else if (k == "TINJ") {
            expect_count(line, 1, 1);
            current_well(line).tinj = num(line, 1);
        } else if (k == "PINJMAX") {
            expect_count(line, 1, 1);
            current_well(line).pinj_max = num(line, 1);
        } else if (k == "HEATER") {
            expect_count(line, 2, 2);
            WellSpec& w = current_well(line);
            w.heater_rate = num(line, 1);
            w.heater_stop = num(line, 2);
        } else unknown(line, "WELL");
    }

    void schedule(const Line& line)
    {
        const std::string k = key(line);
        ScheduleSpec& s = deck_.schedule;
        auto scalar = [&](double& dst) {
            expect_count(line, 1, 1);
            dst = num(line, 1);
        };
        if (k == "TIMES") s.report_times = array(line, 1);
        else if (k == "END") scalar(s.end);
        else if (k == "DT0") scalar(s.dt0);
        else if (k == "DTMIN") scalar(s.dt_min);
        else if (k == "DTMAX") scalar(s.dt_max);
        else if (k == "GROWTH") scalar(s.growth);
        else if (k == "CUT") scalar(s.cut);
        else if (k == "GROWTH_ITERS") {
            expect_count(line, 1, 1);
            s.growth_newton_limit = integer(line, 1);
        } else unknown(line, "SCHEDULE");
    }

    void solver(const Line& line)
    {
        const std::string k = key(line);
        SolverSpec& s = deck_.solver;
        auto scalar = [&](double& dst) {
            expect_count(line, 1, 1);
            dst = num(line, 1);
        };
        auto count = [&](int& dst) {
            expect_count(line, 1, 1);
            dst = integer(line, 1);
        };
        if (k == "NEWTON_TOL") scalar(s.newton_tol);
        else if (k == "LINEAR_TOL") scalar(s.linear_tol);
        else if (k == "MAX_NEWTON") count(s.max_newton);
        else if (k == "MAX_LINEAR") count(s.max_linear);
        else if (k == "THREADS") count(s.threads);
        else if (k == "SUBDOMAINS") count(s.subdomains);
        else if (k == "PER_EPS") scalar(s.per_eps);
        else if (k == "MAX_DTEMP") scalar(s.max_dtemp);
        else if (k == "MAX_DSAT") scalar(s.max_dsat);
        else if (k == "PRECOND") {
            expect_count(line, 1, 1);
            const std::string& v = word(line, 1);
            if (v == "none") s.precond = PreconditionerKind::none;
            else if (v == "bjacobi") s.precond = PreconditionerKind::block_jacobi;
            else if (v == "ras") s.precond = PreconditionerKind::ras;
            else fail(ErrorCode::syntax, "preconditioner must be none|bjacobi|ras", line.number);
        } else if (k == "JACOBIAN") {
            expect_count(line, 1, 1);
            const std::string& v = word(line, 1);
            if (v == "analytic") s.jacobian = JacobianMode::analytic;
            else if (v == "numeric") s.jacobian = JacobianMode::numeric;
            else fail(ErrorCode::syntax, "jacobian must be analytic|numeric", line.number);
        } else if (k == "DAMPING") {
            expect_count(line, 1, 1);
            const std::string& v = word(line, 1);
            if (v == "standard") s.damping = DampingRule::standard;
            else if (v == "root") s.damping = DampingRule::root;
            else if (v == "halving") s.damping = DampingRule::halving;
            else fail(ErrorCode::syntax, "damping must be standard|root|halving", line.number);
        } else unknown(line, "SOLVER");
    }

    // ---------------------------------------------------------------- finalize

    static std::vector<double> expand(const RawArray& raw, int n, const char* what, int fallback_line)
    {
        if (!raw.set) fail(ErrorCode::missing_section, std::string("*") + what + " is required", fallback_line);
        if (static_cast<int>(raw.values.size()) == n) return raw.values;
        if (raw.values.size() == 1) return std::vector<double>(n, raw.values.front());
        std::ostringstream os;
        os << what << " has " << raw.values.size() << " values, expected 1 or " << n;
        fail(ErrorCode::dimension_mismatch, os.str(), raw.line);
    }

    void finalize()
    {
        GridSpec& g = deck_.grid;
        const int grid_line = lines_.at("section:GRID");
        if (!have_dimens_) fail(ErrorCode::missing_section, "*DIMENS is required", grid_line);
        g.dx = expand(dx_, g.nx, "DX", grid_line);
        g.dy = expand(dy_, g.ny, "DY", grid_line);
        g.dz = expand(dz_, g.nz, "DZ", grid_line);
        const int n = g.nx * g.ny * g.nz;
        const int rock_line = lines_.at("section:ROCK");
        deck_.rock.permx = expand(permx_, n, "PERMX", rock_line);
        deck_.rock.permy = permy_.set ? expand(permy_, n, "PERMY", rock_line) : deck_.rock.permx;
        deck_.rock.permz = permz_.set ? expand(permz_, n, "PERMZ", rock_line) : deck_.rock.permx;
        deck_.rock.porosity = expand(por_, n, "POR", rock_line);
    }
};

void check(bool ok, ErrorCode code, const std::string& msg, int line)
{
    if (!ok) fail(code, msg, line);
}

void Parser::validate(const Deck& d, const LineMap& L)
{
    // grid
    const GridSpec& g = d.grid;
    check(g.nx >= 1 && g.ny >= 1 && g.nz >= 1, ErrorCode::non_physical_value,
          "cell counts must be >= 1", L.at("DIMENS"));
    check(static_cast<int>(g.dx.size()) == g.nx && static_cast<int>(g.dy.size()) == g.ny &&
              static_cast<int>(g.dz.size()) == g.nz,
          ErrorCode::dimension_mismatch, "cell size arrays do not match *DIMENS", L.at("DIMENS"));
    for (const auto* v : {&g.dx, &g.dy, &g.dz})
        for (double h : *v)
            check(h > 0.0, ErrorCode::non_physical_value, "cell sizes must be > 0",
                  L.at(v == &g.dx ? "DX" : v == &g.dy ? "DY" : "DZ"));
    const std::size_t n = static_cast<std::size_t>(g.nx) * g.ny * g.nz;

    // rock
    const RockSpec& r = d.rock;
    check(r.permx.size() == n && r.permy.size() == n && r.permz.size() == n,
          ErrorCode::dimension_mismatch, "permeability array length != cell count", L.at("PERMX"));
    check(r.porosity.size() == n, ErrorCode::dimension_mismatch,
          "porosity array length != cell count", L.at("POR"));
    for (const auto* v : {&r.permx, &r.permy, &r.permz})
        for (double k : *v)
            check(k >= 0.0, ErrorCode::non_physical_value, "permeability must be >= 0", L.at("PERMX"));
    for (double phi : r.porosity)
        check(phi > 0.0 && phi <= 1.0, ErrorCode::non_physical_value, "porosity must lie in (0,1]",
              L.at("POR"));
    check(r.cp1 >= 0.0, ErrorCode::non_physical_value, "rock heat capacity must be >= 0", L.at("ROCKCP"));
    for (double k : {r.k_water, r.k_oil, r.k_gas, r.k_rock, r.k_coke})
        check(k >= 0.0, ErrorCode::non_physical_value, "thermal conductivities must be >= 0",
              L.at("section:ROCK"));
    if (r.heat_loss.enabled)
        check(r.heat_loss.d > 0.0 && r.heat_loss.k_ob >= 0.0, ErrorCode::non_physical_value,
              "heat loss needs d > 0 and K_ob >= 0", L.at("HEATLOSS"));

    // components
    const int comp_line = L.at("section:COMPONENTS");
    check(!d.fluid.comps.empty(), ErrorCode::missing_section, "no components declared", comp_line);
    int nwater = 0;
    for (const ComponentProps& c : d.fluid.comps) {
        const int cl = L.at("COMP:" + c.name) ? L.at("COMP:" + c.name) : comp_line;
        if (c.phase_class == PhaseClass::water) ++nwater;
        check(c.M > 0.0, ErrorCode::non_physical_value, "molar mass of " + c.name + " must be > 0", cl);
        if (c.phase_class != PhaseClass::solid) {
            check(c.p_crit > 0.0 && c.t_crit + units::kRankineOffset > 0.0,
                  ErrorCode::missing_critical_props,
                  "component " + c.name + " needs critical pressure and temperature", cl);
            check(c.avg > 0.0, ErrorCode::non_physical_value,
                  "gas viscosity coefficient of " + c.name + " must be > 0", L.at("section:VISCOSITY"));
        }
        if (c.phase_class == PhaseClass::water || c.phase_class == PhaseClass::oil) {
            check(c.rho_ref > 0.0, ErrorCode::non_physical_value,
                  "reference density of " + c.name + " must be > 0", L.at("section:DENSITY"));
            check(c.avisc > 0.0, ErrorCode::non_physical_value,
                  "liquid viscosity coefficient of " + c.name + " must be > 0",
                  L.at("section:VISCOSITY"));
        }
        if (c.phase_class == PhaseClass::solid)
            check(c.rho_ref > 0.0, ErrorCode::non_physical_value,
                  "solid density of " + c.name + " must be > 0", L.at("section:DENSITY"));
        if (c.hvr > 0.0)
            check(c.ev > 0.0 && c.ev <= 1.0, ErrorCode::non_physical_value,
                  "vaporization exponent of " + c.name + " must lie in (0,1]", L.at("section:ENTHALPY"));
    }
    check(nwater == 1, ErrorCode::non_physical_value, "exactly one water component is required",
          comp_line);

    // models validate their own structure; attach a location on failure
    FluidModel fluid;
    try {
        fluid = FluidModel(d.fluid.comps, d.fluid.p_ref, d.fluid.t_ref);
    } catch (const Error& e) {
        fail(e.code(), e.what(), comp_line);
    }

    check(fluid.nco() + fluid.ncg() <= 7, ErrorCode::dimension_mismatch,
          "at most 7 oil plus non-condensable components are supported", comp_line);

    const int rx_line = L.at("section:REACTIONS");
    try {
        ReactionModel rm(fluid, d.reactions.reactions, d.reactions.c_cmax);
        check(d.reactions.stoich_tol > 0.0, ErrorCode::non_physical_value,
              "stoichiometry tolerance must be > 0", L.at("STOICH_TOL"));
        check_stoichiometry(fluid, rm, d.reactions.stoich_tol);
    } catch (const Error& e) {
        if (e.line() > 0) throw;
        fail(e.code(), e.what(), rx_line);
    }

    try {
        RockFluid rf(d.swt, d.slt);
    } catch (const Error& e) {
        fail(e.code(), e.what(), L.at("section:RELPERM-SWT"));
    }

    // initial state
    const InitSpec& in = d.init;
    const int init_line = L.at("section:INIT");
    check(in.p > 0.0, ErrorCode::non_physical_value, "initial pressure must be > 0",
          L.at("PRES") ? L.at("PRES") : init_line);
    check(in.t + units::kRankineOffset > 0.0, ErrorCode::non_physical_value,
          "initial temperature below absolute zero", L.at("TEMP") ? L.at("TEMP") : init_line);
    const int sat_line = L.at("SAT") ? L.at("SAT") : init_line;
    check(in.sw >= 0.0 && in.so >= 0.0 && in.sg >= 0.0, ErrorCode::non_physical_value,
          "saturations must be >= 0", sat_line);
    check(std::abs(in.sw + in.so + in.sg - 1.0) <= 1e-12, ErrorCode::non_physical_value,
          "initial saturations must sum to 1", sat_line);
    const int xl = L.at("XOIL") ? L.at("XOIL") : init_line;
    check(static_cast<int>(in.x.size()) == fluid.nco(), ErrorCode::dimension_mismatch,
          "*XOIL needs one value per oil component", xl);
    double sx = 0.0;
    for (double v : in.x) {
        check(v >= 0.0 && v <= 1.0, ErrorCode::non_physical_value, "oil fractions must lie in [0,1]", xl);
        sx += v;
    }
    check(std::abs(sx - 1.0) <= 1e-12, ErrorCode::non_physical_value,
          "initial oil-phase fractions must sum to 1", xl);
    const int yl = L.at("YGAS") ? L.at("YGAS") : init_line;
    check(in.y.size() == fluid.volatiles().size(), ErrorCode::dimension_mismatch,
          "*YGAS needs one value per volatile component", yl);
    double sy = 0.0, sy_gas = 0.0;
    for (std::size_t i = 0; i < in.y.size(); ++i) {
        check(in.y[i] >= 0.0 && in.y[i] <= 1.0, ErrorCode::non_physical_value,
              "gas fractions must lie in [0,1]", yl);
        sy += in.y[i];
        if (fluid.comp(fluid.volatiles()[i]).phase_class == PhaseClass::gas) sy_gas += in.y[i];
    }
    check(std::abs(sy - 1.0) <= 1e-12, ErrorCode::non_physical_value,
          "initial gas fractions must sum to 1", yl);
    check(sy_gas > 0.0, ErrorCode::non_physical_value,
          "initial gas needs a non-condensable component", yl);
    check(in.cc >= 0.0, ErrorCode::non_physical_value, "initial coke concentration must be >= 0",
          L.at("CONC") ? L.at("CONC") : init_line);

    // wells
    std::set<std::string> names;
    for (std::size_t w = 0; w < d.wells.size(); ++w) {
        const WellSpec& ws = d.wells[w];
        const int wl = w < L.well.size() ? L.well[w] : L.at("section:WELL");
        check(names.insert(ws.name).second, ErrorCode::syntax, "duplicate well " + ws.name, wl);
        check(!ws.perfs.empty(), ErrorCode::non_physical_value, "well " + ws.name + " has no *PERF", wl);
        for (const PerfSpec& p : ws.perfs) {
            check(p.i >= 1 && p.i <= g.nx && p.j >= 1 && p.j <= g.ny && p.k >= 1 && p.k <= g.nz,
                  ErrorCode::dimension_mismatch, "perforation of " + ws.name + " lies outside the grid",
                  wl);
            check(p.wi >= 0.0 && p.rw > 0.0, ErrorCode::non_physical_value,
                  "well index must be >= 0 and radius > 0", wl);
        }
        for (std::size_t a = 0; a < ws.perfs.size(); ++a)
            for (std::size_t b = a + 1; b < ws.perfs.size(); ++b)
                check(!(ws.perfs[a].i == ws.perfs[b].i && ws.perfs[a].j == ws.perfs[b].j &&
                        ws.perfs[a].k == ws.perfs[b].k),
                      ErrorCode::non_physical_value, "well " + ws.name + " perforates a cell twice", wl);
        if (ws.control == ControlKind::bhp)
            check(ws.target > 0.0, ErrorCode::non_physical_value, "bhp target must be > 0", wl);
        else
            check(ws.target >= 0.0, ErrorCode::non_physical_value, "rate target must be >= 0", wl);
        check(ws.heater_rate >= 0.0 && ws.heater_stop >= 0.0, ErrorCode::non_physical_value,
              "heater rate and stop time must be >= 0", wl);
        check(ws.pinj_max >= 0.0, ErrorCode::non_physical_value, "*PINJMAX must be >= 0", wl);
        if (ws.kind == WellKind::injector) {
            check(!ws.inject.empty(), ErrorCode::non_physical_value,
                  "injector " + ws.name + " needs an *INJECT stream", wl);
            check(ws.control != ControlKind::phase_rate || ws.phase == Phase::gas,
                  ErrorCode::non_physical_value, "injectors inject gas only", wl);
            double s = 0.0;
            for (const auto& [name, v] : ws.inject) {
                const int c = fluid.index_of(name);
                check(c >= 0 && fluid.comp(c).phase_class == PhaseClass::gas,
                      ErrorCode::non_physical_value,
                      "injected component " + name + " must be a declared gas component", wl);
                check(v >= 0.0, ErrorCode::non_physical_value, "injected fractions must be >= 0", wl);
                s += v;
            }
            check(std::abs(s - 1.0) <= 1e-9, ErrorCode::non_physical_value,
                  "injected composition must sum to 1", wl);
            check(ws.tinj + units::kRankineOffset > 0.0, ErrorCode::non_physical_value,
                  "injection temperature below absolute zero", wl);
        } else {
            check(ws.inject.empty(), ErrorCode::non_physical_value,
                  "producer " + ws.name + " cannot have an *INJECT stream", wl);
        }
    }

    // schedule
    const ScheduleSpec& s = d.schedule;
    const int sl = L.at("section:SCHEDULE");
    check(s.end > 0.0, ErrorCode::non_physical_value, "*END must be > 0", L.at("END") ? L.at("END") : sl);
    check(s.dt0 > 0.0 && s.dt_min > 0.0 && s.dt_max >= s.dt_min && s.dt0 >= s.dt_min,
          ErrorCode::non_physical_value, "timestep bounds must satisfy 0 < dtmin <= dt0, dtmin <= dtmax",
          sl);
    check(s.growth > 1.0 && s.cut > 0.0 && s.cut < 1.0, ErrorCode::non_physical_value,
          "need growth > 1 and 0 < cut < 1", sl);
    check(s.growth_newton_limit >= 1, ErrorCode::non_physical_value, "*GROWTH_ITERS must be >= 1", sl);
    for (std::size_t i = 0; i < s.report_times.size(); ++i) {
        check(s.report_times[i] > 0.0 && s.report_times[i] <= s.end, ErrorCode::non_physical_value,
              "report times must lie in (0, END]", L.at("TIMES"));
        if (i > 0)
            check(s.report_times[i] > s.report_times[i - 1], ErrorCode::non_physical_value,
                  "report times must increase", L.at("TIMES"));
    }

    // solver
    const SolverSpec& v = d.solver;
    const int vl = L.at("section:SOLVER");
    check(v.newton_tol > 0.0 && v.linear_tol > 0.0 && v.linear_tol < 1.0,
          ErrorCode::non_physical_value, "solver tolerances must be positive (linear < 1)", vl);
    check(v.max_newton >= 1 && v.max_linear >= 1 && v.threads >= 1 && v.threads <= 1024,
          ErrorCode::non_physical_value, "iteration limits and thread count must be >= 1", vl);
    check(v.subdomains >= 1 && v.subdomains <= 4096, ErrorCode::non_physical_value,
          "*SUBDOMAINS must be >= 1", vl);
    check(v.per_eps > 0.0 && v.per_eps < 1.0, ErrorCode::non_physical_value,
          "*PER_EPS must lie in (0,1)", vl);
    check(v.max_dtemp >= 0.0 && v.max_dsat >= 0.0, ErrorCode::non_physical_value,
          "change limits must be >= 0", vl);
}

// ---------------------------------------------------------------- writer

std::string list(const std::vector<double>& v)
{
    if (!v.empty() && std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); }))
        return format_double(v.front());
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

std::string full_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

const char* class_name(PhaseClass c)
{
    switch (c) {
    case PhaseClass::water: return "water";
    case PhaseClass::oil: return "oil";
    case PhaseClass::gas: return "gas";
    case PhaseClass::solid: return "solid";
    }
    return "gas";
}

const char* unit_name(RateUnit u)
{
    switch (u) {
    case RateUnit::lbmol_per_day: return "lbmol/day";
    case RateUnit::ft3_per_day: return "ft3/day";
    case RateUnit::ft3_per_hr: return "ft3/hr";
    }
    return "lbmol/day";
}

const char* phase_name(Phase p)
{
    switch (p) {
    case Phase::water: return "water";
    case Phase::oil: return "oil";
    case Phase::gas: return "gas";
    }
    return "gas";
}

}  // namespace

const char* to_string(RateLaw law)
{
    switch (law) {
    case RateLaw::gas_oil: return "gas-oil";
    case RateLaw::gas_solid: return "gas-solid";
    case RateLaw::cracking: return "cracking";
    }
    return "gas-oil";
}

const char* to_string(WellKind kind)
{
    return kind == WellKind::injector ? "injector" : "producer";
}

const char* to_string(PreconditionerKind kind)
{
    switch (kind) {
    case PreconditionerKind::none: return "none";
    case PreconditionerKind::block_jacobi: return "bjacobi";
    case PreconditionerKind::ras: return "ras";
    }
    return "ras";
}

const char* to_string(JacobianMode mode)
{
    return mode == JacobianMode::analytic ? "analytic" : "numeric";
}

Deck parse_deck(std::string_view text)
{
    Parser p;
    return p.parse(text);
}

Deck read_deck_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::sink_failure, "cannot open deck file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_deck(ss.str());
}

void validate_deck(const Deck& deck)
{
    Parser::validate(deck, LineMap{});
}

std::string write_deck(const Deck& d)
{
    std::ostringstream o;
    const auto f = [](double v) { return format_double(v); };

    o << "*GRID\n";
    o << "*DIMENS " << d.grid.nx << ' ' << d.grid.ny << ' ' << d.grid.nz << '\n';
    o << "*DX " << list(d.grid.dx) << '\n';
    o << "*DY " << list(d.grid.dy) << '\n';
    o << "*DZ " << list(d.grid.dz) << '\n';
    o << "*TOPS " << f(d.grid.top) << '\n';

    const RockSpec& r = d.rock;
    o << "\n*ROCK\n";
    o << "*PERMX " << list(r.permx) << '\n';
    o << "*PERMY " << list(r.permy) << '\n';
    o << "*PERMZ " << list(r.permz) << '\n';
    o << "*POR " << list(r.porosity) << '\n';
    o << "*CPOR " << f(r.cpor) << '\n';
    o << "*CTPOR " << f(r.ctpor) << '\n';
    o << "*CPTPOR " << f(r.cptpor) << '\n';
    o << "*POROSITY_MODEL " << (r.model == PorosityModel::linear ? "linear" : "nonlinear") << '\n';
    o << "*ROCKCP " << f(r.cp1) << ' ' << f(r.cp2) << '\n';
    o << "*THCONW " << f(r.k_water) << '\n';
    o << "*THCONO " << f(r.k_oil) << '\n';
    o << "*THCONG " << f(r.k_gas) << '\n';
    o << "*THCONR " << f(r.k_rock) << '\n';
    o << "*THCONC " << f(r.k_coke) << '\n';
    if (r.heat_loss.enabled)
        o << "*HEATLOSS " << f(r.heat_loss.k_ob) << ' ' << f(r.heat_loss.d) << ' '
          << f(r.heat_loss.rho) << '\n';

    o << "\n*COMPONENTS\n";
    o << "*REFCOND " << f(d.fluid.p_ref) << ' ' << f(d.fluid.t_ref) << '\n';
    for (const ComponentProps& c : d.fluid.comps)
        o << "*COMP " << c.name << ' ' << class_name(c.phase_class) << ' ' << f(c.M) << ' '
          << f(c.p_crit) << ' ' << f(c.t_crit) << '\n';

    o << "\n*KVALUES\n";
    for (const ComponentProps& c : d.fluid.comps)
        o << "*KV " << c.name << ' ' << f(c.kv1) << ' ' << f(c.kv2) << ' ' << f(c.kv3) << ' '
          << f(c.kv4) << ' ' << f(c.kv5) << '\n';

    o << "\n*DENSITY\n";
    for (const ComponentProps& c : d.fluid.comps)
        o << "*DENS " << c.name << ' ' << f(c.rho_ref) << ' ' << f(c.cp) << ' ' << f(c.ct1) << ' '
          << f(c.ct2) << ' ' << f(c.cpt) << '\n';

    o << "\n*VISCOSITY\n";
    for (const ComponentProps& c : d.fluid.comps) {
        o << "*VISL " << c.name << ' ' << f(c.avisc) << ' ' << f(c.bvisc) << '\n';
        o << "*VISG " << c.name << ' ' << f(c.avg) << ' ' << f(c.bvg) << '\n';
    }

    o << "\n*ENTHALPY\n";
    for (const ComponentProps& c : d.fluid.comps) {
        o << "*CPG " << c.name << ' ' << f(c.cpg1) << ' ' << f(c.cpg2) << ' ' << f(c.cpg3) << ' '
          << f(c.cpg4) << '\n';
        o << "*HVAP " << c.name << ' ' << f(c.hvr) << ' ' << f(c.ev) << '\n';
        o << "*CPSOLID " << c.name << ' ' << f(c.cp_solid) << '\n';
    }

    o << "\n*REACTIONS\n";
    o << "*CCMAX " << f(d.reactions.c_cmax) << '\n';
    o << "*STOICH_TOL " << f(d.reactions.stoich_tol) << '\n';
    for (const ReactionSpec& rs : d.reactions.reactions) {
        o << "*REACTION " << rs.name << ' ' << to_string(rs.law) << '\n';
        o << "*RATE " << f(rs.A) << ' ' << f(rs.Ea) << ' ' << f(rs.H) << '\n';
        for (const auto& [name, s] : rs.stoich) o << "*STOICH " << name << ' ' << f(s) << '\n';
    }

    const auto table = [&](const char* name, const SatTable& t) {
        o << "\n*" << name << '\n';
        for (std::size_t i = 0; i < t.s.size(); ++i)
            o << f(t.s[i]) << ' ' << f(t.kr[i]) << ' ' << f(t.kro[i]) << ' ' << f(t.pc[i]) << '\n';
    };
    table("RELPERM-SWT", d.swt);
    table("RELPERM-SLT", d.slt);

    o << "\n*INIT\n";
    o << "*PRES " << f(d.init.p) << '\n';
    o << "*TEMP " << f(d.init.t) << '\n';
    o << "*SAT " << f(d.init.sw) << ' ' << f(d.init.so) << ' ' << f(d.init.sg) << '\n';
    o << "*XOIL " << full_list(d.init.x) << '\n';
    o << "*YGAS " << full_list(d.init.y) << '\n';
    o << "*CONC " << f(d.init.cc) << '\n';

    if (!d.wells.empty()) {
        o << "\n*WELL\n";
        for (const WellSpec& w : d.wells) {
            o << "*WELL " << w.name << ' ' << to_string(w.kind) << '\n';
            for (const PerfSpec& p : w.perfs) {
                o << "*PERF " << p.i << ' ' << p.j << ' ' << p.k << '\n';
                o << "*WI " << f(p.wi) << '\n';
                o << "*RW " << f(p.rw) << '\n';
                o << "*SKIN " << f(p.skin) << '\n';
            }
            switch (w.control) {
            case ControlKind::bhp: o << "*CONTROL bhp " << f(w.target) << '\n'; break;
            case ControlKind::phase_rate:
                o << "*CONTROL rate " << phase_name(w.phase) << ' ' << f(w.target) << ' '
                  << unit_name(w.unit) << '\n';
                break;
            case ControlKind::total_rate:
                o << "*CONTROL total " << f(w.target) << ' ' << unit_name(w.unit) << '\n';
                break;
            }
            // a bhp-controlled well keeps its phase/unit defaults; they only matter for rates
            o << "*RATE_CONDITIONS "
              << (w.conditions == RateConditions::standard ? "standard" : "reservoir") << '\n';
            if (!w.inject.empty()) {
                o << "*INJECT";
                for (const auto& [name, v] : w.inject) o << ' ' << name << ' ' << f(v);
                o << '\n';
            }
            o << "*TINJ " << f(w.tinj) << '\n';
            o << "*PINJMAX " << f(w.pinj_max) << '\n';
            o << "*HEATER " << f(w.heater_rate) << ' ' << f(w.heater_stop) << '\n';
        }
    }

    const ScheduleSpec& s = d.schedule;
    o << "\n*SCHEDULE\n";
    if (!s.report_times.empty()) o << "*TIMES " << full_list(s.report_times) << '\n';
    o << "*END " << f(s.end) << '\n';
    o << "*DT0 " << f(s.dt0) << '\n';
    o << "*DTMIN " << f(s.dt_min) << '\n';
    o << "*DTMAX " << f(s.dt_max) << '\n';
    o << "*GROWTH " << f(s.growth) << '\n';
    o << "*CUT " << f(s.cut) << '\n';
    o << "*GROWTH_ITERS " << s.growth_newton_limit << '\n';

    const SolverSpec& v = d.solver;
    o << "\n*SOLVER\n";
    o << "*NEWTON_TOL " << f(v.newton_tol) << '\n';
    o << "*LINEAR_TOL " << f(v.linear_tol) << '\n';
    o << "*MAX_NEWTON " << v.max_newton << '\n';
    o << "*MAX_LINEAR " << v.max_linear << '\n';
    o << "*THREADS " << v.threads << '\n';
    o << "*SUBDOMAINS " << v.subdomains << '\n';
    o << "*PRECOND " << to_string(v.precond) << '\n';
    o << "*PER_EPS " << f(v.per_eps) << '\n';
    o << "*JACOBIAN " << to_string(v.jacobian) << '\n';
    o << "*DAMPING "
      << (v.damping == DampingRule::standard ? "standard"
          : v.damping == DampingRule::root   ? "root"
                                             : "halving")
      << '\n';
    o << "*MAX_DTEMP " << f(v.max_dtemp) << '\n';
    o << "*MAX_DSAT " << f(v.max_dsat) << '\n';
    return o.str();
}

}  // namespace isc
