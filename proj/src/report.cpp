#include "gep/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

#include "gep/csv.hpp"
#include "gep/ingest.hpp"

namespace gep {

namespace {

std::size_t category(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::logic_error("unknown stack category " + name);
    return static_cast<std::size_t>(it - names.begin());
}

double rounded(double v) {
    const std::string s = format_number(v, 9);
    return std::stod(s);
}

}  // namespace

CostBreakdown objective_breakdown(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                                  const std::vector<double>& x) {
    const std::size_t T = index.horizon();
    CostBreakdown b;
    for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
        const auto& u = system.thermal_units[j];
        if (auto c = index.thermal_invest(j)) b.investment += u.annuity_alpha * u.inv_cost_annual * u.pmax * x[*c];
        for (std::size_t t = 0; t < T; ++t) b.thermal += u.marginal_cost() * x[index.thermal_p(j, t)];
    }
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        const auto& s = system.storage_units[k];
        if (auto c = index.storage_invest(k)) b.investment += s.annuity_alpha * s.inv_cost_annual * s.p_discharge_max * x[*c];
        for (std::size_t t = 0; t < T; ++t) b.storage += s.cost_voc * x[index.discharge(k, t)];
    }
    for (std::size_t r = 0; r < system.renewable_units.size(); ++r) {
        const auto& u = system.renewable_units[r];
        if (auto c = index.renewable_invest(r)) b.investment += u.annuity_alpha * u.inv_cost_annual * u.capacity * x[*c];
        for (std::size_t t = 0; t < T; ++t) b.renewable += u.cost_voc * x[index.renewable_p(r, t)];
    }
    for (std::size_t n = 0; n < system.nodes.size(); ++n) {
        for (std::size_t t = 0; t < T; ++t) b.load_shed += config.cost_load_shed * x[index.shed(n, t)];
    }
    return b;
}

CostBreakdown objective_breakdown(const ScenarioResult& r) {
    return objective_breakdown(*r.system, r.config, r.index, r.solution.values);
}

std::vector<TechCapacity> investments_table(const SystemModel& system, const VariableIndex& index,
                                            const std::vector<double>& x) {
    std::map<std::string, double> built;
    for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
        if (auto c = index.thermal_invest(j)) built[to_string(system.thermal_units[j].tech)] += x[*c] * system.thermal_units[j].pmax;
    }
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        if (auto c = index.storage_invest(k)) {
            built[to_string(system.storage_units[k].kind)] += x[*c] * system.storage_units[k].p_discharge_max;
        }
    }
    for (std::size_t r = 0; r < system.renewable_units.size(); ++r) {
        if (auto c = index.renewable_invest(r)) {
            built[to_string(system.renewable_units[r].tech)] += x[*c] * system.renewable_units[r].capacity;
        }
    }
    std::vector<TechCapacity> out;
    for (const auto& [tech, mw] : built) out.push_back({tech, mw});
    return out;
}

std::vector<TechCapacity> investments_table(const ScenarioResult& r) {
    return investments_table(*r.system, r.index, r.solution.values);
}

double line_flow(const SystemModel& system, const VariableIndex& index, const std::vector<double>& x, std::size_t line,
                 std::size_t t) {
    const auto& l = system.lines[line];
    std::size_t from = 0, to = 0;
    for (std::size_t n = 0; n < system.nodes.size(); ++n) {
        if (system.nodes[n].id == l.from_node) from = n;
        if (system.nodes[n].id == l.to_node) to = n;
    }
    return l.susceptance * (x[index.angle(from, t)] - x[index.angle(to, t)]);
}

std::size_t period_hours(Aggregation a) {
    switch (a) {
        case Aggregation::hourly: return 1;
        case Aggregation::daily: return 24;
        case Aggregation::weekly: return 168;
    }
    return 1;
}

double DispatchStack::total_production(std::size_t period) const {
    double s = 0.0;
    for (double v : production[period]) s += v;
    return s;
}

double DispatchStack::total_consumption(std::size_t period) const {
    double s = 0.0;
    for (double v : consumption[period]) s += v;
    return s;
}

DispatchStack dispatch_stack(const SystemModel& system, const VariableIndex& index, const std::vector<double>& x,
                             Aggregation aggregation, Window window, const std::string& country) {
    if (window.begin > window.end || window.end > index.horizon()) {
        throw std::out_of_range("window [" + std::to_string(window.begin) + ", " + std::to_string(window.end) +
                                ") outside horizon " + std::to_string(index.horizon()));
    }
    const auto& P = kProductionCategories;
    const auto& C = kConsumptionCategories;
    DispatchStack st;
    st.aggregation = aggregation;
    st.window = window;
    st.production_categories = P;
    st.consumption_categories = C;
    const std::size_t len = period_hours(aggregation);
    const std::size_t periods = (window.end - window.begin) / len;
    st.production.assign(periods, std::vector<double>(P.size(), 0.0));
    st.consumption.assign(periods, std::vector<double>(C.size(), 0.0));

    auto inside = [&](const std::string& node_id) {
        if (country.empty()) return true;
        const BusNode* n = system.find_node(node_id);
        return n && n->country == country;
    };

    const std::size_t c_imports = category(P, "imports"), c_down = category(P, "shift_down"), c_shed = category(P, "shed");
    const std::size_t c_demand = category(C, "demand"), c_up = category(C, "shift_up"), c_exports = category(C, "exports");

    for (std::size_t k = 0; k < periods; ++k) {
        auto& prod = st.production[k];
        auto& cons = st.consumption[k];
        for (std::size_t t = window.begin + k * len; t < window.begin + (k + 1) * len; ++t) {
            for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
                const auto& u = system.thermal_units[j];
                if (inside(u.node)) prod[category(P, to_string(u.tech))] += x[index.thermal_p(j, t)];
            }
            for (std::size_t s = 0; s < system.storage_units.size(); ++s) {
                const auto& u = system.storage_units[s];
                if (!inside(u.node)) continue;
                prod[category(P, to_string(u.kind))] += x[index.discharge(s, t)];
                if (u.kind == StorageKind::pump) cons[category(C, "pump_charge")] += x[index.charge(s, t)];
                if (u.kind == StorageKind::battery) cons[category(C, "battery_charge")] += x[index.charge(s, t)];
            }
            for (std::size_t r = 0; r < system.renewable_units.size(); ++r) {
                const auto& u = system.renewable_units[r];
                if (inside(u.node)) prod[category(P, to_string(u.tech))] += x[index.renewable_p(r, t)];
            }
            for (std::size_t n = 0; n < system.nodes.size(); ++n) {
                const auto& node = system.nodes[n];
                if (!inside(node.id)) continue;
                cons[c_demand] += compose_demand(node.demand, t);
                prod[c_shed] += x[index.shed(n, t)];
                prod[c_down] += x[index.emob_down(n, t)] + x[index.load_down(n, t)];
                cons[c_up] += x[index.emob_up(n, t)] + x[index.load_up(n, t)];
                if (node.exogenous_injection) {
                    const double e = (*node.exogenous_injection)[t];
                    (e >= 0.0 ? prod[c_imports] : cons[c_exports]) += std::abs(e);
                }
            }
            for (std::size_t l = 0; l < system.lines.size(); ++l) {
                const auto& line = system.lines[l];
                const bool in_from = inside(line.from_node), in_to = inside(line.to_node);
                if (in_from == in_to) continue;
                // Flow into the region.
                const double f = line_flow(system, index, x, l, t) * (in_to ? 1.0 : -1.0);
                (f >= 0.0 ? prod[c_imports] : cons[c_exports]) += std::abs(f);
            }
        }
    }
    return st;
}

DispatchStack dispatch_stack(const ScenarioResult& r, Aggregation aggregation, Window window, const std::string& country) {
    return dispatch_stack(*r.system, r.index, r.solution.values, aggregation, window, country);
}

std::vector<double> storage_levels(const SystemModel& system, const VariableIndex& index, const std::vector<double>& x,
                                   StorageKind kind, LevelSample sample) {
    const std::size_t T = index.horizon();
    std::vector<double> hourly(T, 0.0);
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        if (system.storage_units[k].kind != kind) continue;
        for (std::size_t t = 0; t < T; ++t) hourly[t] += x[index.soc(k, t)];
    }
    if (sample == LevelSample::hourly) return hourly;
    std::vector<double> monthly;
    for (std::size_t end = kHoursPerMonth; end <= T; end += kHoursPerMonth) monthly.push_back(hourly[end - 1] / 1e6);
    return monthly;
}

std::vector<double> storage_levels(const ScenarioResult& r, StorageKind kind, LevelSample sample) {
    return storage_levels(*r.system, r.index, r.solution.values, kind, sample);
}

Table to_table(const std::vector<TechCapacity>& investments) {
    Table t;
    t.columns = {"technology", "mw"};
    for (const auto& i : investments) t.rows.push_back({i.tech, i.mw});
    return t;
}

Table to_table(const DispatchStack& st) {
    Table t;
    t.columns = {"period", "start_hour"};
    for (const auto& c : st.production_categories) t.columns.push_back("prod_" + c);
    for (const auto& c : st.consumption_categories) t.columns.push_back("cons_" + c);
    const std::size_t len = period_hours(st.aggregation);
    for (std::size_t k = 0; k < st.num_periods(); ++k) {
        std::vector<Table::Cell> row{static_cast<double>(k), static_cast<double>(st.window.begin + k * len)};
        for (double v : st.production[k]) row.push_back(v);
        for (double v : st.consumption[k]) row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table to_table(const CostBreakdown& b) {
    Table t;
    t.columns = {"term", "eur"};
    t.rows = {{std::string("investment"), b.investment}, {std::string("thermal"), b.thermal},
              {std::string("storage"), b.storage},       {std::string("renewable"), b.renewable},
              {std::string("load_shed"), b.load_shed},   {std::string("total"), b.total()}};
    return t;
}

Table levels_table(const std::vector<double>& levels, StorageKind kind, LevelSample sample) {
    Table t;
    const bool monthly = sample == LevelSample::end_of_month;
    t.columns = {monthly ? "month" : "hour", "kind", monthly ? "level_twh" : "level_mwh"};
    for (std::size_t i = 0; i < levels.size(); ++i) {
        t.rows.push_back({static_cast<double>(monthly ? i + 1 : i), to_string(kind), levels[i]});
    }
    return t;
}

std::string render(const Table& table, Format format) {
    if (format == Format::csv) {
        CsvWriter w(table.columns);
        for (const auto& row : table.rows) {
            std::vector<std::string> cells;
            for (const auto& c : row) {
                cells.push_back(std::holds_alternative<double>(c) ? format_number(std::get<double>(c), 9)
                                                                  : std::get<std::string>(c));
            }
            w.add_row(std::move(cells));
        }
        return w.str();
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            const auto& c = row[i];
            if (std::holds_alternative<double>(c)) {
                obj[table.columns[i]] = rounded(std::get<double>(c));
            } else {
                obj[table.columns[i]] = std::get<std::string>(c);
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void emit(const Table& table, const std::filesystem::path& path, Format format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << render(table, format);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace gep
