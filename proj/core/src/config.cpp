#include "inls/config.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "inls/ground_state.hpp"
#include "inls/io.hpp"
#include "inls/transforms.hpp"

namespace inls {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("config error at " + where + ": " + what);
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k)
                ok = true;
        if (!ok)
            fail(where + "." + it.key(), "unknown key");
    }
}

double num(const json& j, const std::string& where) {
    if (!j.is_number())
        fail(where, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        fail(where, "expected an integer");
    return j.get<int>();
}

} // namespace

RunConfig parse_config(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        fail("$", "expected an object");
    reject_unknown(j, "$",
                   {"params", "grid", "initial_condition", "evolution", "outputs",
                    "seed"});

    RunConfig cfg;

    if (!j.contains("params"))
        fail("$.params", "missing");
    {
        const json& p = j["params"];
        reject_unknown(p, "$.params", {"N", "b", "p"});
        if (!p.contains("N") || !p.contains("b"))
            fail("$.params", "N and b are required");
        int N = integer(p["N"], "$.params.N");
        double b = num(p["b"], "$.params.b");
        try {
            if (p.contains("p"))
                cfg.params = make_params_general(N, b, num(p["p"], "$.params.p"));
            else
                cfg.params = make_params(N, b);
        } catch (const std::exception& e) {
            fail("$.params", e.what());
        }
    }

    if (!j.contains("grid"))
        fail("$.grid", "missing");
    {
        const json& g = j["grid"];
        reject_unknown(g, "$.grid", {"M", "L", "cell_centered"});
        if (!g.contains("M") || !g.contains("L"))
            fail("$.grid", "M and L are required");
        bool cc = g.value("cell_centered", true);
        try {
            cfg.grid = make_grid(cfg.params.dim, integer(g["M"], "$.grid.M"),
                                 num(g["L"], "$.grid.L"), cc);
        } catch (const std::exception& e) {
            fail("$.grid", e.what());
        }
    }

    if (j.contains("initial_condition")) {
        const json& ic = j["initial_condition"];
        reject_unknown(ic, "$.initial_condition",
                       {"type", "T", "lambda0", "gamma0", "amplitude", "width", "path"});
        std::string type = ic.value("type", "ground_state");
        auto& out = cfg.initial_condition;
        if (type == "ground_state") {
            out.kind = InitialCondition::Kind::ground_state;
        } else if (type == "s_family") {
            out.kind = InitialCondition::Kind::s_family;
            out.s_family.T = ic.contains("T") ? num(ic["T"], "$.initial_condition.T") : 1.0;
            out.s_family.lambda0 =
                ic.contains("lambda0") ? num(ic["lambda0"], "$.initial_condition.lambda0")
                                       : 1.0;
            out.s_family.gamma0 =
                ic.contains("gamma0") ? num(ic["gamma0"], "$.initial_condition.gamma0")
                                      : 0.0;
            if (out.s_family.lambda0 <= 0.0)
                fail("$.initial_condition.lambda0", "must be positive");
        } else if (type == "gaussian") {
            out.kind = InitialCondition::Kind::gaussian;
            if (ic.contains("amplitude"))
                out.amplitude = num(ic["amplitude"], "$.initial_condition.amplitude");
            if (ic.contains("width"))
                out.width = num(ic["width"], "$.initial_condition.width");
            if (out.width <= 0.0)
                fail("$.initial_condition.width", "must be positive");
        } else if (type == "snapshot") {
            out.kind = InitialCondition::Kind::snapshot;
            if (!ic.contains("path") || !ic["path"].is_string())
                fail("$.initial_condition.path", "required string");
            out.path = ic["path"].get<std::string>();
        } else {
            fail("$.initial_condition.type", "unknown kind: " + type);
        }
    }

    if (j.contains("evolution")) {
        const json& e = j["evolution"];
        reject_unknown(e, "$.evolution",
                       {"dt0", "t_end", "grad_blowup_threshold", "adapt", "record_every",
                        "strict_boundary", "snapshot_times", "conc_radius"});
        auto& ec = cfg.evolution;
        if (e.contains("dt0"))
            ec.dt0 = num(e["dt0"], "$.evolution.dt0");
        if (ec.dt0 <= 0.0)
            fail("$.evolution.dt0", "must be positive");
        if (e.contains("t_end"))
            ec.t_end = num(e["t_end"], "$.evolution.t_end");
        if (e.contains("grad_blowup_threshold"))
            ec.grad_blowup_threshold =
                num(e["grad_blowup_threshold"], "$.evolution.grad_blowup_threshold");
        if (e.contains("adapt")) {
            if (!e["adapt"].is_boolean())
                fail("$.evolution.adapt", "expected a boolean");
            ec.adapt = e["adapt"].get<bool>();
        }
        if (e.contains("record_every"))
            ec.record_every = integer(e["record_every"], "$.evolution.record_every");
        if (ec.record_every < 1)
            fail("$.evolution.record_every", "must be >= 1");
        if (e.contains("strict_boundary")) {
            if (!e["strict_boundary"].is_boolean())
                fail("$.evolution.strict_boundary", "expected a boolean");
            ec.strict_boundary = e["strict_boundary"].get<bool>();
        }
        if (e.contains("snapshot_times")) {
            if (!e["snapshot_times"].is_array())
                fail("$.evolution.snapshot_times", "expected an array");
            for (const auto& t : e["snapshot_times"])
                ec.snapshot_times.push_back(num(t, "$.evolution.snapshot_times[]"));
        }
        if (e.contains("conc_radius"))
            ec.conc_radius = num(e["conc_radius"], "$.evolution.conc_radius");
        if (ec.conc_radius <= 0.0)
            fail("$.evolution.conc_radius", "must be positive");
    }

    if (j.contains("outputs")) {
        const json& o = j["outputs"];
        reject_unknown(o, "$.outputs", {"diagnostics_csv", "snapshot_dir"});
        if (o.contains("diagnostics_csv"))
            cfg.outputs.diagnostics_csv = o["diagnostics_csv"].get<std::string>();
        if (o.contains("snapshot_dir"))
            cfg.outputs.snapshot_dir = o["snapshot_dir"].get<std::string>();
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            fail("$.seed", "expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    return cfg;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

std::string echo_config(const RunConfig& cfg) {
    json j;
    j["params"] = {{"N", cfg.params.dim}, {"b", cfg.params.b}};
    if (!cfg.params.critical)
        j["params"]["p"] = cfg.params.p;
    j["grid"] = {{"M", cfg.grid.points},
                 {"L", cfg.grid.half_width},
                 {"cell_centered", cfg.grid.cell_centered}};
    const auto& ic = cfg.initial_condition;
    switch (ic.kind) {
    case InitialCondition::Kind::ground_state:
        j["initial_condition"] = {{"type", "ground_state"}};
        break;
    case InitialCondition::Kind::s_family:
        j["initial_condition"] = {{"type", "s_family"},
                                  {"T", ic.s_family.T},
                                  {"lambda0", ic.s_family.lambda0},
                                  {"gamma0", ic.s_family.gamma0}};
        break;
    case InitialCondition::Kind::gaussian:
        j["initial_condition"] = {{"type", "gaussian"},
                                  {"amplitude", ic.amplitude},
                                  {"width", ic.width}};
        break;
    case InitialCondition::Kind::snapshot:
        j["initial_condition"] = {{"type", "snapshot"}, {"path", ic.path}};
        break;
    }
    j["evolution"] = {{"dt0", cfg.evolution.dt0},
                      {"t_end", cfg.evolution.t_end},
                      {"grad_blowup_threshold", cfg.evolution.grad_blowup_threshold},
                      {"adapt", cfg.evolution.adapt},
                      {"record_every", cfg.evolution.record_every},
                      {"strict_boundary", cfg.evolution.strict_boundary},
                      {"snapshot_times", cfg.evolution.snapshot_times},
                      {"conc_radius", cfg.evolution.conc_radius}};
    j["outputs"] = {{"diagnostics_csv", cfg.outputs.diagnostics_csv},
                    {"snapshot_dir", cfg.outputs.snapshot_dir}};
    j["seed"] = cfg.seed;
    return j.dump(2);
}

Field build_initial_condition(const RunConfig& cfg) {
    const auto& ic = cfg.initial_condition;
    switch (ic.kind) {
    case InitialCondition::Kind::ground_state: {
        GroundState gs = shoot(cfg.params);
        return to_cartesian(gs, cfg.grid);
    }
    case InitialCondition::Kind::s_family: {
        GroundState gs = shoot(cfg.params);
        return s_family(ic.s_family, gs, 0.0, cfg.grid);
    }
    case InitialCondition::Kind::gaussian: {
        Field u = make_field(cfg.grid);
        for (std::size_t i = 0; i < u.values.size(); ++i)
            u.values[i] = ic.amplitude *
                          std::exp(-cfg.grid.radius_sq(i) / (2.0 * ic.width * ic.width));
        return u;
    }
    case InitialCondition::Kind::snapshot: {
        Snapshot snap = read_snapshot_file(ic.path);
        if (snap.field.grid.dim != cfg.grid.dim ||
            snap.field.grid.points != cfg.grid.points ||
            snap.field.grid.half_width != cfg.grid.half_width)
            throw std::invalid_argument("snapshot grid does not match the configured grid");
        return snap.field;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace inls
