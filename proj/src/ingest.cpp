#include "gep/ingest.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "gep/validate.hpp"

namespace gep {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDemandFiles[] = {"demand_heat_pump.csv", "demand_e_mobility.csv", "demand_hydrogen.csv",
                                        "demand_base.csv"};
constexpr const char* kReserveColumns[] = {"scr_up", "scr_dn", "tcr_up", "tcr_dn"};

/// Column-per-entity series file. Every column must name a known entity.
class SeriesFile {
public:
    SeriesFile() = default;

    SeriesFile(const fs::path& path, std::size_t horizon, const std::set<std::string>& known) : present_(true) {
        const CsvTable t = CsvTable::read(path);
        if (horizon != 0 && t.num_rows() != horizon) {
            throw InputError(path.string(), 0,
                             "has " + std::to_string(t.num_rows()) + " rows, expected " + std::to_string(horizon));
        }
        rows_ = t.num_rows();
        for (std::size_t c = 0; c < t.header().size(); ++c) {
            const std::string& name = t.header()[c];
            if (!known.empty() && known.count(name) == 0) {
                throw InputError(path.string(), 1, "column '" + name + "' does not name a known entity");
            }
            if (!columns_.emplace(name, t.numeric_column(c)).second) {
                throw InputError(path.string(), 1, "duplicate column '" + name + "'");
            }
        }
        file_ = path.string();
    }

    bool present() const { return present_; }
    std::size_t rows() const { return rows_; }

    const Series* find(const std::string& name) const {
        auto it = columns_.find(name);
        return it == columns_.end() ? nullptr : &it->second;
    }

    Series require(const std::string& name) const {
        if (const Series* s = find(name)) return *s;
        throw InputError(file_, 1, "missing column '" + name + "'");
    }

    Series or_zero(const std::string& name, std::size_t horizon) const {
        if (const Series* s = find(name)) return *s;
        return Series(horizon, 0.0);
    }

private:
    bool present_ = false;
    std::size_t rows_ = 0;
    std::string file_;
    std::map<std::string, Series> columns_;
};

std::string num(double v) { return format_number(v, 9); }
std::string flag(bool b) { return b ? "1" : "0"; }

ReserveFlags read_reserve_flags(const CsvTable& t, std::size_t row, bool optional) {
    ReserveFlags flags{true, true, true, true};
    for (std::size_t p = 0; p < kReserveProducts; ++p) {
        auto c = t.column(kReserveColumns[p]);
        if (!c) {
            if (!optional) t.require_column(kReserveColumns[p]);
            continue;
        }
        flags[p] = t.flag(row, *c);
    }
    return flags;
}

template <typename F>
auto parse_enum(const CsvTable& t, std::size_t row, std::size_t col, F parse) {
    try {
        return parse(t.cell(row, col));
    } catch (const std::invalid_argument& e) {
        t.fail(row, e.what());
    }
}

}  // namespace

SystemModel load_system(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw InputError(dir.string(), 0, "not a directory");
    SystemModel sys;

    // Nodes.
    const CsvTable nodes = CsvTable::read(dir / "nodes.csv");
    {
        const auto c_id = nodes.require_column("id");
        const auto c_country = nodes.require_column("country");
        const auto c_slack = nodes.require_column("is_slack");
        std::set<std::string> seen;
        for (std::size_t r = 0; r < nodes.num_rows(); ++r) {
            BusNode n;
            n.id = nodes.cell(r, c_id);
            n.country = nodes.cell(r, c_country);
            n.is_slack = nodes.flag(r, c_slack);
            if (n.id.empty()) nodes.fail(r, "empty node id");
            if (!seen.insert(n.id).second) nodes.fail(r, "duplicate node id '" + n.id + "'");
            sys.nodes.push_back(std::move(n));
        }
    }
    std::set<std::string> node_ids;
    for (const auto& n : sys.nodes) node_ids.insert(n.id);
    auto check_node = [&](const CsvTable& t, std::size_t r, const std::string& id) {
        if (node_ids.count(id) == 0) t.fail(r, "unknown node id '" + id + "'");
    };

    // Lines.
    {
        const CsvTable t = CsvTable::read(dir / "lines.csv");
        const auto c_id = t.require_column("id");
        const auto c_from = t.require_column("from");
        const auto c_to = t.require_column("to");
        const auto c_b = t.require_column("susceptance_mw_per_rad");
        const auto c_lim = t.require_column("limit_mw");
        const auto c_xb = t.require_column("cross_border");
        for (std::size_t r = 0; r < t.num_rows(); ++r) {
            TransmissionLine l;
            l.id = t.cell(r, c_id);
            l.from_node = t.cell(r, c_from);
            l.to_node = t.cell(r, c_to);
            check_node(t, r, l.from_node);
            check_node(t, r, l.to_node);
            l.susceptance = t.number(r, c_b);
            l.flow_limit = t.number(r, c_lim);
            l.cross_border = t.flag(r, c_xb);
            sys.lines.push_back(std::move(l));
        }
    }

    // Thermal units.
    {
        const CsvTable t = CsvTable::read(dir / "thermal.csv");
        const auto c = [&](const char* name) { return t.require_column(name); };
        const auto c_id = c("id"), c_node = c("node"), c_tech = c("tech"), c_pmax = c("pmax_mw");
        const auto c_ru = c("ramp_up_mw_h"), c_rd = c("ramp_down_mw_h"), c_voc = c("voc"), c_fuel = c("fuel");
        const auto c_emi = c("emi"), c_cand = c("candidate"), c_inv = c("inv_eur_mw_a"), c_alpha = c("alpha");
        const auto c_res = c("res_target");
        const auto c_init = t.column("p_init_mw");
        for (std::size_t r = 0; r < t.num_rows(); ++r) {
            ThermalUnit u;
            u.id = t.cell(r, c_id);
            u.node = t.cell(r, c_node);
            check_node(t, r, u.node);
            u.tech = parse_enum(t, r, c_tech, parse_thermal_tech);
            u.pmax = t.number(r, c_pmax);
            u.ramp_up = t.number(r, c_ru);
            u.ramp_down = t.number(r, c_rd);
            u.cost_voc = t.number(r, c_voc);
            u.cost_fuel = t.number(r, c_fuel);
            u.cost_emi = t.number(r, c_emi);
            u.is_candidate = t.flag(r, c_cand);
            u.inv_cost_annual = t.number(r, c_inv);
            u.annuity_alpha = t.number(r, c_alpha);
            u.reserve_eligible = read_reserve_flags(t, r, false);
            u.counts_toward_res_target = t.flag(r, c_res);
            if (c_init && !t.cell(r, *c_init).empty()) u.p_initial = t.number(r, *c_init);
            sys.thermal_units.push_back(std::move(u));
        }
    }

    // Storage units.
    const CsvTable storage = CsvTable::read(dir / "storage.csv");
    {
        const CsvTable& t = storage;
        const auto c = [&](const char* name) { return t.require_column(name); };
        const auto c_id = c("id"), c_node = c("node"), c_kind = c("kind"), c_pch = c("pch_mw"), c_pdis = c("pdis_mw");
        const auto c_emax = c("emax_mwh"), c_ech = c("eta_ch"), c_edis = c("eta_dis"), c_soc0 = c("soc0_mwh");
        const auto c_socend = c("socmin_end_mwh"), c_voc = c("voc"), c_cand = c("candidate");
        const auto c_inv = c("inv_eur_mw_a"), c_alpha = c("alpha");
        for (std::size_t r = 0; r < t.num_rows(); ++r) {
            StorageUnit s;
            s.id = t.cell(r, c_id);
            s.node = t.cell(r, c_node);
            check_node(t, r, s.node);
            s.kind = parse_enum(t, r, c_kind, parse_storage_kind);
            s.p_charge_max = t.number(r, c_pch);
            s.p_discharge_max = t.number(r, c_pdis);
            s.energy_max = t.number(r, c_emax);
            s.eta_charge = t.number(r, c_ech);
            s.eta_discharge = t.number(r, c_edis);
            s.soc_initial = t.number(r, c_soc0);
            s.soc_final_min = t.number(r, c_socend);
            s.cost_voc = t.number(r, c_voc);
            s.is_candidate = t.flag(r, c_cand);
            s.inv_cost_annual = t.number(r, c_inv);
            s.annuity_alpha = t.number(r, c_alpha);
            s.reserve_eligible = read_reserve_flags(t, r, true);
            sys.storage_units.push_back(std::move(s));
        }
    }

    // Renewable units.
    {
        const CsvTable t = CsvTable::read(dir / "renewable.csv");
        const auto c = [&](const char* name) { return t.require_column(name); };
        const auto c_id = c("id"), c_node = c("node"), c_tech = c("tech"), c_cap = c("cap_mw"), c_voc = c("voc");
        const auto c_cand = c("candidate"), c_inv = c("inv_eur_mw_a"), c_alpha = c("alpha"), c_res = c("res_target");
        for (std::size_t r = 0; r < t.num_rows(); ++r) {
            RenewableUnit u;
            u.id = t.cell(r, c_id);
            u.node = t.cell(r, c_node);
            check_node(t, r, u.node);
            u.tech = parse_enum(t, r, c_tech, parse_renewable_tech);
            u.capacity = t.number(r, c_cap);
            u.cost_voc = t.number(r, c_voc);
            u.is_candidate = t.flag(r, c_cand);
            u.inv_cost_annual = t.number(r, c_inv);
            u.annuity_alpha = t.number(r, c_alpha);
            u.counts_toward_res_target = t.flag(r, c_res);
            sys.renewable_units.push_back(std::move(u));
        }
    }

    // Shifting limits.
    if (fs::exists(dir / "shift.csv")) {
        const CsvTable t = CsvTable::read(dir / "shift.csv");
        const auto c_node = t.require_column("node");
        const auto c_ehr = t.require_column("e_hr_max_mw");
        const auto c_eday = t.require_column("e_day_max_mwh");
        const auto c_lhr = t.require_column("l_hr_max_mw");
        const auto c_lday = t.require_column("l_day_max_mwh");
        for (std::size_t r = 0; r < t.num_rows(); ++r) {
            const std::string& id = t.cell(r, c_node);
            check_node(t, r, id);
            for (auto& n : sys.nodes) {
                if (n.id != id) continue;
                n.shift = {t.number(r, c_ehr), t.number(r, c_eday), t.number(r, c_lhr), t.number(r, c_lday)};
            }
        }
    }

    // Series.
    const fs::path series = dir / "series";
    const SeriesFile base(series / "demand_base.csv", 0, node_ids);
    sys.horizon = base.rows();
    const std::size_t T = sys.horizon;
    const SeriesFile hp(series / "demand_heat_pump.csv", T, node_ids);
    const SeriesFile em(series / "demand_e_mobility.csv", T, node_ids);
    const SeriesFile h2(series / "demand_hydrogen.csv", T, node_ids);
    SeriesFile exo;
    if (fs::exists(series / "exogenous.csv")) exo = SeriesFile(series / "exogenous.csv", T, node_ids);
    for (auto& n : sys.nodes) {
        n.demand.heat_pump = hp.require(n.id);
        n.demand.e_mobility = em.require(n.id);
        n.demand.hydrogen = h2.require(n.id);
        n.demand.base = base.require(n.id);
        if (const Series* s = exo.find(n.id)) n.exogenous_injection = *s;
    }

    std::set<std::string> renewable_ids;
    for (const auto& u : sys.renewable_units) renewable_ids.insert(u.id);
    if (!sys.renewable_units.empty()) {
        const SeriesFile avail(series / "availability.csv", T, renewable_ids);
        for (auto& u : sys.renewable_units) u.profile = avail.require(u.id);
    }

    std::set<std::string> storage_ids;
    for (const auto& s : sys.storage_units) storage_ids.insert(s.id);
    SeriesFile inflow;
    if (fs::exists(series / "inflow.csv")) inflow = SeriesFile(series / "inflow.csv", T, storage_ids);
    for (auto& s : sys.storage_units) s.inflow = inflow.or_zero(s.id, T);

    SeriesFile reserve;
    if (fs::exists(series / "reserve.csv")) {
        reserve = SeriesFile(series / "reserve.csv", T, {std::begin(kReserveColumns), std::end(kReserveColumns)});
    }
    for (std::size_t p = 0; p < kReserveProducts; ++p) sys.reserve.requirement[p] = reserve.or_zero(kReserveColumns[p], T);

    const auto violations = validate_system(sys);
    if (!violations.empty()) {
        std::string msg = std::to_string(violations.size()) + " validation violation(s):";
        for (const auto& v : violations) msg += "\n  " + v.to_string();
        throw InputError(dir.string(), 0, msg);
    }
    return sys;
}

void write_system(const SystemModel& sys, const fs::path& dir) {
    fs::create_directories(dir / "series");

    CsvWriter nodes({"id", "country", "is_slack"});
    for (const auto& n : sys.nodes) nodes.add_row({n.id, n.country, flag(n.is_slack)});
    nodes.write(dir / "nodes.csv");

    CsvWriter lines({"id", "from", "to", "susceptance_mw_per_rad", "limit_mw", "cross_border"});
    for (const auto& l : sys.lines) {
        lines.add_row({l.id, l.from_node, l.to_node, num(l.susceptance), num(l.flow_limit), flag(l.cross_border)});
    }
    lines.write(dir / "lines.csv");

    bool any_init = false;
    for (const auto& u : sys.thermal_units) any_init = any_init || u.p_initial.has_value();
    std::vector<std::string> th_header{"id", "node", "tech", "pmax_mw", "ramp_up_mw_h", "ramp_down_mw_h", "voc",
                                       "fuel", "emi", "candidate", "inv_eur_mw_a", "alpha", "scr_up", "scr_dn",
                                       "tcr_up", "tcr_dn", "res_target"};
    if (any_init) th_header.push_back("p_init_mw");
    CsvWriter thermal(th_header);
    for (const auto& u : sys.thermal_units) {
        std::vector<std::string> row{u.id, u.node, to_string(u.tech), num(u.pmax), num(u.ramp_up), num(u.ramp_down),
                                     num(u.cost_voc), num(u.cost_fuel), num(u.cost_emi), flag(u.is_candidate),
                                     num(u.inv_cost_annual), num(u.annuity_alpha)};
        for (bool f : u.reserve_eligible) row.push_back(flag(f));
        row.push_back(flag(u.counts_toward_res_target));
        if (any_init) row.push_back(u.p_initial ? num(*u.p_initial) : "");
        thermal.add_row(std::move(row));
    }
    thermal.write(dir / "thermal.csv");

    CsvWriter storage({"id", "node", "kind", "pch_mw", "pdis_mw", "emax_mwh", "eta_ch", "eta_dis", "soc0_mwh",
                       "socmin_end_mwh", "voc", "candidate", "inv_eur_mw_a", "alpha", "scr_up", "scr_dn", "tcr_up",
                       "tcr_dn"});
    for (const auto& s : sys.storage_units) {
        std::vector<std::string> row{s.id, s.node, to_string(s.kind), num(s.p_charge_max), num(s.p_discharge_max),
                                     num(s.energy_max), num(s.eta_charge), num(s.eta_discharge), num(s.soc_initial),
                                     num(s.soc_final_min), num(s.cost_voc), flag(s.is_candidate),
                                     num(s.inv_cost_annual), num(s.annuity_alpha)};
        for (bool f : s.reserve_eligible) row.push_back(flag(f));
        storage.add_row(std::move(row));
    }
    storage.write(dir / "storage.csv");

    CsvWriter renewable({"id", "node", "tech", "cap_mw", "voc", "candidate", "inv_eur_mw_a", "alpha", "res_target"});
    for (const auto& u : sys.renewable_units) {
        renewable.add_row({u.id, u.node, to_string(u.tech), num(u.capacity), num(u.cost_voc), flag(u.is_candidate),
                           num(u.inv_cost_annual), num(u.annuity_alpha), flag(u.counts_toward_res_target)});
    }
    renewable.write(dir / "renewable.csv");

    CsvWriter shift({"node", "e_hr_max_mw", "e_day_max_mwh", "l_hr_max_mw", "l_day_max_mwh"});
    for (const auto& n : sys.nodes) {
        shift.add_row({n.id, num(n.shift.e_hr_max), num(n.shift.e_day_max), num(n.shift.l_hr_max), num(n.shift.l_day_max)});
    }
    shift.write(dir / "shift.csv");

    auto write_columns = [&](const fs::path& path, const std::vector<std::string>& names,
                             const std::vector<const Series*>& cols) {
        CsvWriter w(names);
        for (std::size_t t = 0; t < sys.horizon; ++t) {
            std::vector<std::string> row;
            for (const Series* s : cols) row.push_back(num((*s)[t]));
            w.add_row(std::move(row));
        }
        w.write(path);
    };

    const fs::path series = dir / "series";
    std::vector<std::string> node_names;
    for (const auto& n : sys.nodes) node_names.push_back(n.id);
    auto demand_cols = [&](Series DemandProfile::*member) {
        std::vector<const Series*> out;
        for (const auto& n : sys.nodes) out.push_back(&(n.demand.*member));
        return out;
    };
    write_columns(series / kDemandFiles[0], node_names, demand_cols(&DemandProfile::heat_pump));
    write_columns(series / kDemandFiles[1], node_names, demand_cols(&DemandProfile::e_mobility));
    write_columns(series / kDemandFiles[2], node_names, demand_cols(&DemandProfile::hydrogen));
    write_columns(series / kDemandFiles[3], node_names, demand_cols(&DemandProfile::base));

    std::vector<std::string> exo_names;
    std::vector<const Series*> exo_cols;
    for (const auto& n : sys.nodes) {
        if (n.exogenous_injection) {
            exo_names.push_back(n.id);
            exo_cols.push_back(&*n.exogenous_injection);
        }
    }
    if (!exo_names.empty()) write_columns(series / "exogenous.csv", exo_names, exo_cols);
    else fs::remove(series / "exogenous.csv");

    if (!sys.renewable_units.empty()) {
        std::vector<std::string> names;
        std::vector<const Series*> cols;
        for (const auto& u : sys.renewable_units) {
            names.push_back(u.id);
            cols.push_back(&u.profile);
        }
        write_columns(series / "availability.csv", names, cols);
    }
    if (!sys.storage_units.empty()) {
        std::vector<std::string> names;
        std::vector<const Series*> cols;
        for (const auto& s : sys.storage_units) {
            names.push_back(s.id);
            cols.push_back(&s.inflow);
        }
        write_columns(series / "inflow.csv", names, cols);
    }
    std::vector<const Series*> res_cols;
    for (const auto& r : sys.reserve.requirement) res_cols.push_back(&r);
    write_columns(series / "reserve.csv", {std::begin(kReserveColumns), std::end(kReserveColumns)}, res_cols);
}

namespace {

const std::set<std::string> kScenarioKeys = {"name", "allow_gas_candidates", "allow_shifting", "xborder_scale",
                                             "gas_price_multiplier", "res_target_B", "horizon_T", "cost_load_shed"};

ScenarioConfig config_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where, 0, "scenario must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (kScenarioKeys.count(key) == 0) throw InputError(where, 0, "unknown scenario field '" + key + "'");
    }
    ScenarioConfig c;
    try {
        c.name = j.value("name", c.name);
        c.allow_gas_candidates = j.value("allow_gas_candidates", c.allow_gas_candidates);
        c.allow_shifting = j.value("allow_shifting", c.allow_shifting);
        c.xborder_scale = j.value("xborder_scale", c.xborder_scale);
        c.gas_price_multiplier = j.value("gas_price_multiplier", c.gas_price_multiplier);
        c.res_target = j.value("res_target_B", c.res_target);
        c.horizon = j.value("horizon_T", c.horizon);
        c.cost_load_shed = j.value("cost_load_shed", c.cost_load_shed);
    } catch (const json::exception& e) {
        throw InputError(where, 0, std::string("bad scenario field: ") + e.what());
    }
    const auto violations = validate_config(c);
    if (!violations.empty()) throw InputError(where, 0, violations.front().to_string());
    return c;
}

json config_to_json(const ScenarioConfig& c) {
    return json{{"name", c.name},
                {"allow_gas_candidates", c.allow_gas_candidates},
                {"allow_shifting", c.allow_shifting},
                {"xborder_scale", c.xborder_scale},
                {"gas_price_multiplier", c.gas_price_multiplier},
                {"res_target_B", c.res_target},
                {"horizon_T", c.horizon},
                {"cost_load_shed", c.cost_load_shed}};
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string(), 0, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string(), 0, e.what());
    }
}

}  // namespace

ScenarioConfig load_scenario(const fs::path& path) { return config_from_json(read_json(path), path.string()); }

std::vector<ScenarioConfig> load_scenario_matrix(const fs::path& path) {
    const json j = read_json(path);
    if (!j.is_array()) throw InputError(path.string(), 0, "scenario matrix must be a JSON array");
    std::vector<ScenarioConfig> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(config_from_json(j[i], path.string() + "[" + std::to_string(i) + "]"));
    }
    if (out.empty()) throw InputError(path.string(), 0, "scenario matrix is empty");
    return out;
}

void write_scenario(const ScenarioConfig& config, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << config_to_json(config).dump(2) << '\n';
}

EmobilityShiftLimits derive_emob_shift_limits(double annual_em_demand, double share, double spread_hours, double days) {
    if (!(annual_em_demand >= 0.0)) throw std::invalid_argument("annual e-mobility demand must be >= 0");
    if (!(share >= 0.0) || !(spread_hours > 0.0) || !(days > 0.0)) {
        throw std::invalid_argument("share must be >= 0 and spread_hours, days > 0");
    }
    EmobilityShiftLimits out;
    out.e_day_max = share * annual_em_demand / days;
    out.e_hr_max = out.e_day_max / spread_hours;
    return out;
}

DsmShiftLimits derive_dsm_shift_limits(double dsm_capacity, double hours_per_day) {
    if (!(dsm_capacity >= 0.0)) throw std::invalid_argument("DSM capacity must be >= 0");
    if (!(hours_per_day >= 0.0)) throw std::invalid_argument("hours_per_day must be >= 0");
    return {dsm_capacity, hours_per_day * dsm_capacity};
}

double compose_demand(const DemandProfile& p, std::size_t t) {
    if (t >= p.base.size() || t >= p.heat_pump.size() || t >= p.e_mobility.size() || t >= p.hydrogen.size()) {
        throw std::out_of_range("demand hour " + std::to_string(t) + " outside the profile");
    }
    return p.heat_pump[t] + p.e_mobility[t] + p.hydrogen[t] + p.base[t];
}

Series total_demand(const DemandProfile& p) {
    Series out(p.base.size());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = compose_demand(p, t);
    return out;
}

double annuity_factor(double rate, double lifetime) {
    if (!(lifetime >= 1.0)) throw std::invalid_argument("lifetime must be >= 1 year");
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be >= 0");
    if (rate == 0.0) return 1.0 / lifetime;
    const double growth = std::pow(1.0 + rate, lifetime);
    return rate * growth / (growth - 1.0);
}

SystemModel apply_scenario(const SystemModel& system, const ScenarioConfig& config) {
    const auto violations = validate_config(config);
    if (!violations.empty()) throw std::invalid_argument(violations.front().to_string());
    if (config.horizon > system.horizon) {
        throw std::invalid_argument("scenario horizon " + std::to_string(config.horizon) + " exceeds system horizon " +
                                    std::to_string(system.horizon));
    }

    SystemModel out = system;
    if (config.horizon != 0 && config.horizon != system.horizon) {
        const std::size_t T = config.horizon;
        auto cut = [T](Series& s) { s.resize(T); };
        for (auto& n : out.nodes) {
            cut(n.demand.heat_pump);
            cut(n.demand.e_mobility);
            cut(n.demand.hydrogen);
            cut(n.demand.base);
            if (n.exogenous_injection) cut(*n.exogenous_injection);
        }
        for (auto& s : out.storage_units) cut(s.inflow);
        for (auto& r : out.renewable_units) cut(r.profile);
        for (auto& r : out.reserve.requirement) cut(r);
        out.horizon = T;
    }

    if (!config.allow_gas_candidates) {
        std::erase_if(out.thermal_units, [](const ThermalUnit& u) { return u.is_candidate && is_gas(u.tech); });
    }
    if (!config.allow_shifting) {
        for (auto& n : out.nodes) n.shift = ShiftSpec{};
    }
    for (auto& l : out.lines) {
        if (l.cross_border) l.flow_limit *= config.xborder_scale;
    }
    for (auto& u : out.thermal_units) {
        if (is_gas(u.tech)) u.cost_fuel *= config.gas_price_multiplier;
    }
    return out;
}

}  // namespace gep
