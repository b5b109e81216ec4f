#include "gep/formulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gep/ingest.hpp"

namespace gep {

namespace {

template <typename T>
std::vector<std::size_t> sorted_by_id(const std::vector<T>& items) {
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a].id < items[b].id; });
    return order;
}

std::vector<std::size_t> slots_from_order(const std::vector<std::size_t>& order) {
    std::vector<std::size_t> slot(order.size());
    for (std::size_t s = 0; s < order.size(); ++s) slot[order[s]] = s;
    return slot;
}

const char* kProductTag[kReserveProducts] = {"scru", "scrd", "tcru", "tcrd"};

std::string col_name(const char* tag, const std::string& id, std::size_t t) {
    return std::string(tag) + "_" + id + "_" + std::to_string(t);
}

std::map<std::string, std::size_t> node_positions(const SystemModel& system) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < system.nodes.size(); ++i) pos.emplace(system.nodes[i].id, i);
    return pos;
}

std::size_t node_of(const std::map<std::string, std::size_t>& pos, const std::string& id) {
    auto it = pos.find(id);
    if (it == pos.end()) throw std::invalid_argument("unknown node id '" + id + "'");
    return it->second;
}

bool any_up_active(const std::array<bool, kReserveProducts>& a) {
    return a[static_cast<std::size_t>(ReserveProduct::scr_up)] || a[static_cast<std::size_t>(ReserveProduct::tcr_up)];
}

bool any_down_active(const std::array<bool, kReserveProducts>& a) {
    return a[static_cast<std::size_t>(ReserveProduct::scr_down)] ||
           a[static_cast<std::size_t>(ReserveProduct::tcr_down)];
}

constexpr ReserveProduct kUp[] = {ReserveProduct::scr_up, ReserveProduct::tcr_up};
constexpr ReserveProduct kDown[] = {ReserveProduct::scr_down, ReserveProduct::tcr_down};

bool hydro_storage(StorageKind k) { return k == StorageKind::dam || k == StorageKind::pump; }

}  // namespace

VariableIndex::VariableIndex(const SystemModel& system) : T_(system.horizon) {
    thermal_order_ = sorted_by_id(system.thermal_units);
    storage_order_ = sorted_by_id(system.storage_units);
    renew_order_ = sorted_by_id(system.renewable_units);
    node_order_ = sorted_by_id(system.nodes);
    thermal_slot_ = slots_from_order(thermal_order_);
    storage_slot_ = slots_from_order(storage_order_);
    renew_slot_ = slots_from_order(renew_order_);
    node_slot_ = slots_from_order(node_order_);

    std::size_t next = 0;
    auto block = [&](std::size_t entities, std::size_t hours) {
        ColumnBlock b{next, entities, hours};
        next += b.size();
        return b;
    };
    const std::size_t nth = system.thermal_units.size();
    const std::size_t nst = system.storage_units.size();
    const std::size_t nre = system.renewable_units.size();
    const std::size_t nn = system.nodes.size();

    thermal_p_ = block(nth, T_);
    for (auto& b : thermal_res_) b = block(nth, T_);
    dis_ = block(nst, T_);
    ch_ = block(nst, T_);
    soc_ = block(nst, T_);
    spill_ = block(nst, T_);
    for (auto& b : storage_res_) b = block(nst, T_);
    renew_p_ = block(nre, T_);

    // Investment columns, one per candidate: thermal, storage, renewable,
    // each in id order.
    thermal_inv_.assign(nth, std::nullopt);
    storage_inv_.assign(nst, std::nullopt);
    renew_inv_.assign(nre, std::nullopt);
    std::size_t inv = next;
    for (std::size_t j : thermal_order_) {
        if (system.thermal_units[j].is_candidate) thermal_inv_[j] = inv++;
    }
    for (std::size_t k : storage_order_) {
        if (system.storage_units[k].is_candidate) storage_inv_[k] = inv++;
    }
    for (std::size_t r : renew_order_) {
        if (system.renewable_units[r].is_candidate) renew_inv_[r] = inv++;
    }
    num_candidates_ = inv - next;
    invest_ = block(num_candidates_, 1);

    shed_ = block(nn, T_);
    e_up_ = block(nn, T_);
    e_down_ = block(nn, T_);
    l_up_ = block(nn, T_);
    l_down_ = block(nn, T_);
    theta_ = block(nn, T_);
    total_ = next;
}

std::vector<ColumnBlock> VariableIndex::blocks() const {
    std::vector<ColumnBlock> out{thermal_p_};
    for (const auto& b : thermal_res_) out.push_back(b);
    out.insert(out.end(), {dis_, ch_, soc_, spill_});
    for (const auto& b : storage_res_) out.push_back(b);
    out.insert(out.end(), {renew_p_, invest_, shed_, e_up_, e_down_, l_up_, l_down_, theta_});
    return out;
}

std::array<bool, kReserveProducts> active_reserve_products(const SystemModel& system) {
    std::array<bool, kReserveProducts> active{};
    for (std::size_t p = 0; p < kReserveProducts; ++p) {
        for (double v : system.reserve.requirement[p]) {
            if (v > 0.0) {
                active[p] = true;
                break;
            }
        }
    }
    return active;
}

LPProblem make_columns(const SystemModel& system, const VariableIndex& index) {
    const std::size_t T = index.horizon();
    LPProblem lp;
    lp.cost.assign(index.num_columns(), 0.0);
    lp.col_lower.assign(index.num_columns(), 0.0);
    lp.col_upper.assign(index.num_columns(), kInf);
    lp.col_names.assign(index.num_columns(), std::string());

    for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
        const auto& id = system.thermal_units[j].id;
        for (std::size_t t = 0; t < T; ++t) {
            lp.col_names[index.thermal_p(j, t)] = col_name("p", id, t);
            for (std::size_t p = 0; p < kReserveProducts; ++p) {
                lp.col_names[index.thermal_reserve(j, static_cast<ReserveProduct>(p), t)] =
                    col_name(kProductTag[p], id, t);
            }
        }
        if (auto c = index.thermal_invest(j)) {
            lp.col_names[*c] = "ut_" + id;
            lp.col_upper[*c] = 1.0;
        }
    }
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        const auto& id = system.storage_units[k].id;
        for (std::size_t t = 0; t < T; ++t) {
            lp.col_names[index.discharge(k, t)] = col_name("dis", id, t);
            lp.col_names[index.charge(k, t)] = col_name("ch", id, t);
            lp.col_names[index.soc(k, t)] = col_name("soc", id, t);
            lp.col_names[index.spill(k, t)] = col_name("spill", id, t);
            for (std::size_t p = 0; p < kReserveProducts; ++p) {
                lp.col_names[index.storage_reserve(k, static_cast<ReserveProduct>(p), t)] =
                    col_name((std::string("s") + kProductTag[p]).c_str(), id, t);
            }
        }
        if (auto c = index.storage_invest(k)) {
            lp.col_names[*c] = "us_" + id;
            lp.col_upper[*c] = 1.0;
        }
    }
    for (std::size_t r = 0; r < system.renewable_units.size(); ++r) {
        const auto& id = system.renewable_units[r].id;
        for (std::size_t t = 0; t < T; ++t) lp.col_names[index.renewable_p(r, t)] = col_name("pr", id, t);
        if (auto c = index.renewable_invest(r)) {
            lp.col_names[*c] = "ur_" + id;
            lp.col_upper[*c] = 1.0;
        }
    }
    for (std::size_t n = 0; n < system.nodes.size(); ++n) {
        const auto& node = system.nodes[n];
        for (std::size_t t = 0; t < T; ++t) {
            lp.col_names[index.shed(n, t)] = col_name("ls", node.id, t);
            lp.col_names[index.emob_up(n, t)] = col_name("eup", node.id, t);
            lp.col_names[index.emob_down(n, t)] = col_name("edn", node.id, t);
            lp.col_names[index.load_up(n, t)] = col_name("lup", node.id, t);
            lp.col_names[index.load_down(n, t)] = col_name("ldn", node.id, t);
            const std::size_t th = index.angle(n, t);
            lp.col_names[th] = col_name("th", node.id, t);
            if (node.is_slack) {
                lp.col_upper[th] = 0.0;
            } else {
                lp.col_lower[th] = -kInf;
            }
        }
    }
    return lp;
}

std::vector<double> build_objective(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index) {
    const std::size_t T = index.horizon();
    std::vector<double> c(index.num_columns(), 0.0);
    for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
        const auto& u = system.thermal_units[j];
        for (std::size_t t = 0; t < T; ++t) c[index.thermal_p(j, t)] = u.marginal_cost();
        if (auto col = index.thermal_invest(j)) c[*col] = u.annuity_alpha * u.inv_cost_annual * u.pmax;
    }
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        const auto& s = system.storage_units[k];
        for (std::size_t t = 0; t < T; ++t) c[index.discharge(k, t)] = s.cost_voc;
        if (auto col = index.storage_invest(k)) c[*col] = s.annuity_alpha * s.inv_cost_annual * s.p_discharge_max;
    }
    for (std::size_t r = 0; r < system.renewable_units.size(); ++r) {
        const auto& u = system.renewable_units[r];
        for (std::size_t t = 0; t < T; ++t) c[index.renewable_p(r, t)] = u.cost_voc;
        if (auto col = index.renewable_invest(r)) c[*col] = u.annuity_alpha * u.inv_cost_annual * u.capacity;
    }
    for (std::size_t n = 0; n < system.nodes.size(); ++n) {
        for (std::size_t t = 0; t < T; ++t) c[index.shed(n, t)] = config.cost_load_shed;
    }
    return c;
}

void add_thermal_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp) {
    const std::size_t T = index.horizon();
    const auto active = active_reserve_products(system);
    for (std::size_t j : index.thermal_order()) {
        const auto& u = system.thermal_units[j];
        const auto inv = index.thermal_invest(j);

        // Capacity. Existing units take it as a column bound.
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t p = index.thermal_p(j, t);
            if (inv) {
                const std::size_t row = lp.add_row(col_name("cap", u.id, t), -kInf, 0.0);
                lp.add_entry(row, p, 1.0);
                lp.add_entry(row, *inv, -u.pmax);
            } else {
                lp.col_upper[p] = u.pmax;
            }
        }

        // Ramping with reserve provision. When the ramp limit is at least the
        // capacity the rows are implied by capacity, headroom and footroom.
        const bool has_up = any_up_active(active);
        const bool has_down = any_down_active(active);
        auto ramp_rows = [&](bool up, double limit) {
            if (limit >= u.pmax) return;
            const auto& products = up ? kUp : kDown;
            const bool with_reserve = up ? has_up : has_down;
            bool eligible = false;
            for (ReserveProduct prod : products) {
                const auto k = static_cast<std::size_t>(prod);
                eligible = eligible || (u.reserve_eligible[k] && active[k]);
            }
            for (std::size_t t = 0; t < T; ++t) {
                // Without an initial dispatch p at hour -1 is p at hour 0, so
                // the first row only limits reserve provision.
                if (t == 0 && !u.p_initial && !(with_reserve && eligible)) continue;
                const double sign = up ? 1.0 : -1.0;
                double rhs = inv ? 0.0 : limit;
                const std::size_t row = lp.add_row(col_name(up ? "rampu" : "rampd", u.id, t), -kInf, 0.0);
                if (t > 0) {
                    lp.add_entry(row, index.thermal_p(j, t), sign);
                    lp.add_entry(row, index.thermal_p(j, t - 1), -sign);
                } else if (u.p_initial) {
                    lp.add_entry(row, index.thermal_p(j, t), sign);
                    rhs += sign * *u.p_initial;
                }
                if (with_reserve) {
                    for (ReserveProduct prod : products) {
                        if (u.reserve_eligible[static_cast<std::size_t>(prod)] && active[static_cast<std::size_t>(prod)]) {
                            lp.add_entry(row, index.thermal_reserve(j, prod, t), 1.0);
                        }
                    }
                }
                if (inv) lp.add_entry(row, *inv, -limit);
                lp.row_upper[row] = rhs;
            }
        };
        ramp_rows(true, u.ramp_up);
        ramp_rows(false, u.ramp_down);
    }
}

void add_storage_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp) {
    const std::size_t T = index.horizon();
    for (std::size_t k : index.storage_order()) {
        const auto& s = system.storage_units[k];
        const auto inv = index.storage_invest(k);
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t ch = index.charge(k, t);
            const std::size_t dis = index.discharge(k, t);
            const std::size_t soc = index.soc(k, t);
            const std::size_t spill = index.spill(k, t);
            if (!hydro_storage(s.kind)) lp.col_upper[spill] = 0.0;

            if (inv) {
                const std::pair<std::size_t, double> caps[] = {{ch, s.p_charge_max},
                                                               {dis, s.p_discharge_max},
                                                               {soc, s.energy_max}};
                const char* tags[] = {"chcap", "discap", "soccap"};
                for (std::size_t i = 0; i < 3; ++i) {
                    const std::size_t row = lp.add_row(col_name(tags[i], s.id, t), -kInf, 0.0);
                    lp.add_entry(row, caps[i].first, 1.0);
                    lp.add_entry(row, *inv, -caps[i].second);
                }
            } else {
                lp.col_upper[ch] = s.p_charge_max;
                lp.col_upper[dis] = s.p_discharge_max;
                lp.col_upper[soc] = s.energy_max;
            }

            // soc_t - soc_{t-1} - eta_ch ch + dis / eta_dis + spill = inflow
            const std::size_t row = lp.add_row(col_name("soc", s.id, t), s.inflow[t], s.inflow[t]);
            lp.add_entry(row, soc, 1.0);
            if (t > 0) {
                lp.add_entry(row, index.soc(k, t - 1), -1.0);
            } else if (inv) {
                lp.add_entry(row, *inv, -s.soc_initial);
            } else {
                lp.row_lower[row] += s.soc_initial;
                lp.row_upper[row] += s.soc_initial;
            }
            if (s.p_charge_max > 0.0) lp.add_entry(row, ch, -s.eta_charge);
            lp.add_entry(row, dis, 1.0 / s.eta_discharge);
            lp.add_entry(row, spill, 1.0);
        }
        if (T > 0 && s.soc_final_min > 0.0) {
            const std::size_t last = index.soc(k, T - 1);
            if (inv) {
                const std::size_t row = lp.add_row("socend_" + s.id, 0.0, kInf);
                lp.add_entry(row, last, 1.0);
                lp.add_entry(row, *inv, -s.soc_final_min);
            } else {
                lp.col_lower[last] = s.soc_final_min;
            }
        }
    }
}

void add_renewable_constraints(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                               LPProblem& lp) {
    const std::size_t T = index.horizon();
    for (std::size_t r : index.renewable_order()) {
        const auto& u = system.renewable_units[r];
        const auto inv = index.renewable_invest(r);
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t p = index.renewable_p(r, t);
            const double avail = u.capacity * u.profile[t];
            if (inv && avail > 0.0) {
                const std::size_t row = lp.add_row(col_name("avail", u.id, t), -kInf, 0.0);
                lp.add_entry(row, p, 1.0);
                lp.add_entry(row, *inv, -avail);
            } else {
                lp.col_upper[p] = inv ? 0.0 : avail;
            }
        }
    }

    if (config.res_target > 0.0) {
        const std::size_t row = lp.add_row("res_target", config.res_target, kInf);
        for (std::size_t r : index.renewable_order()) {
            if (!system.renewable_units[r].counts_toward_res_target) continue;
            for (std::size_t t = 0; t < T; ++t) lp.add_entry(row, index.renewable_p(r, t), 1.0);
        }
        for (std::size_t j : index.thermal_order()) {
            if (!system.thermal_units[j].counts_toward_res_target) continue;
            for (std::size_t t = 0; t < T; ++t) lp.add_entry(row, index.thermal_p(j, t), 1.0);
        }
    }
}

void add_network_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp) {
    const std::size_t T = index.horizon();
    const auto pos = node_positions(system);
    const std::size_t N = system.nodes.size();

    // Units and lines attached to each node, in id order.
    std::vector<std::vector<std::size_t>> thermal_at(N), storage_at(N), renew_at(N);
    for (std::size_t j : index.thermal_order()) thermal_at[node_of(pos, system.thermal_units[j].node)].push_back(j);
    for (std::size_t k : index.storage_order()) storage_at[node_of(pos, system.storage_units[k].node)].push_back(k);
    for (std::size_t r : index.renewable_order()) renew_at[node_of(pos, system.renewable_units[r].node)].push_back(r);

    // Net susceptance coupling per node: flow out of n on line l is
    // B (theta_from - theta_to) with sign +1 at from, -1 at to.
    std::vector<std::map<std::size_t, double>> lap(N);
    for (const auto& l : system.lines) {
        const std::size_t f = node_of(pos, l.from_node);
        const std::size_t to = node_of(pos, l.to_node);
        lap[f][f] += l.susceptance;
        lap[f][to] -= l.susceptance;
        lap[to][to] += l.susceptance;
        lap[to][f] -= l.susceptance;
    }

    for (std::size_t n : index.node_order()) {
        const auto& node = system.nodes[n];
        for (std::size_t t = 0; t < T; ++t) {
            const double demand = compose_demand(node.demand, t);
            const double exo = node.exogenous_injection ? (*node.exogenous_injection)[t] : 0.0;
            // generation - consumption - net outflow = demand - exogenous
            const double rhs = demand - exo;
            const std::size_t row = lp.add_row(col_name("bal", node.id, t), rhs, rhs);
            for (std::size_t j : thermal_at[n]) lp.add_entry(row, index.thermal_p(j, t), 1.0);
            for (std::size_t k : storage_at[n]) {
                lp.add_entry(row, index.discharge(k, t), 1.0);
                if (system.storage_units[k].p_charge_max > 0.0) lp.add_entry(row, index.charge(k, t), -1.0);
            }
            for (std::size_t r : renew_at[n]) lp.add_entry(row, index.renewable_p(r, t), 1.0);
            lp.add_entry(row, index.shed(n, t), 1.0);
            lp.col_upper[index.shed(n, t)] = std::max(0.0, demand);
            if (node.shift.enabled()) {
                lp.add_entry(row, index.emob_up(n, t), -1.0);
                lp.add_entry(row, index.emob_down(n, t), 1.0);
                lp.add_entry(row, index.load_up(n, t), -1.0);
                lp.add_entry(row, index.load_down(n, t), 1.0);
            }
            for (const auto& [m, b] : lap[n]) {
                if (b != 0.0) lp.add_entry(row, index.angle(m, t), -b);
            }
        }
    }

    for (const auto& l : system.lines) {
        const std::size_t f = node_of(pos, l.from_node);
        const std::size_t to = node_of(pos, l.to_node);
        for (std::size_t t = 0; t < T; ++t) {
            const std::size_t row = lp.add_row(col_name("flow", l.id, t), -l.flow_limit, l.flow_limit);
            lp.add_entry(row, index.angle(f, t), l.susceptance);
            lp.add_entry(row, index.angle(to, t), -l.susceptance);
        }
    }
}

void add_shifting_constraints(const SystemModel& system, const ScenarioConfig& config, const VariableIndex& index,
                              LPProblem& lp) {
    const std::size_t T = index.horizon();
    for (std::size_t n : index.node_order()) {
        const auto& node = system.nodes[n];
        const ShiftSpec& s = node.shift;
        const bool on = config.allow_shifting && s.enabled();
        for (std::size_t t = 0; t < T; ++t) {
            lp.col_upper[index.emob_up(n, t)] = on ? s.e_hr_max : 0.0;
            lp.col_upper[index.emob_down(n, t)] = on ? std::min(s.e_hr_max, std::max(0.0, node.demand.e_mobility[t])) : 0.0;
            lp.col_upper[index.load_up(n, t)] = on ? s.l_hr_max : 0.0;
            lp.col_upper[index.load_down(n, t)] = on ? s.l_hr_max : 0.0;
        }
        if (!on) continue;

        // Days are 24-hour blocks from hour 0; a trailing partial block counts
        // as a day of its own.
        for (std::size_t day = 0, t0 = 0; t0 < T; ++day, t0 += 24) {
            const std::size_t t1 = std::min(T, t0 + 24);
            const std::string tag = node.id + "_" + std::to_string(day);
            struct DayRows {
                const char* name;
                double lo, hi;
                double up_coef, down_coef;
                bool emob;
            };
            const DayRows rows[] = {{"eday", -kInf, s.e_day_max, 1.0, 1.0, true},
                                    {"ebal", 0.0, 0.0, 1.0, -1.0, true},
                                    {"lday", -kInf, s.l_day_max, 1.0, 1.0, false},
                                    {"lbal", 0.0, 0.0, 1.0, -1.0, false}};
            for (const auto& d : rows) {
                const std::size_t row = lp.add_row(std::string(d.name) + "_" + tag, d.lo, d.hi);
                for (std::size_t t = t0; t < t1; ++t) {
                    lp.add_entry(row, d.emob ? index.emob_up(n, t) : index.load_up(n, t), d.up_coef);
                    lp.add_entry(row, d.emob ? index.emob_down(n, t) : index.load_down(n, t), d.down_coef);
                }
            }
        }
    }
}

void add_reserve_constraints(const SystemModel& system, const VariableIndex& index, LPProblem& lp) {
    const std::size_t T = index.horizon();
    const auto active = active_reserve_products(system);

    // Ineligible units and inactive products keep their columns at zero.
    for (std::size_t j = 0; j < system.thermal_units.size(); ++j) {
        for (std::size_t p = 0; p < kReserveProducts; ++p) {
            if (active[p] && system.thermal_units[j].reserve_eligible[p]) continue;
            for (std::size_t t = 0; t < T; ++t) lp.col_upper[index.thermal_reserve(j, static_cast<ReserveProduct>(p), t)] = 0.0;
        }
    }
    for (std::size_t k = 0; k < system.storage_units.size(); ++k) {
        for (std::size_t p = 0; p < kReserveProducts; ++p) {
            if (active[p] && system.storage_units[k].reserve_eligible[p]) continue;
            for (std::size_t t = 0; t < T; ++t) lp.col_upper[index.storage_reserve(k, static_cast<ReserveProduct>(p), t)] = 0.0;
        }
    }

    auto provides = [&](const ReserveFlags& flags, const ReserveProduct* products) {
        bool any = false;
        for (std::size_t i = 0; i < 2; ++i) {
            const auto p = static_cast<std::size_t>(products[i]);
            any = any || (active[p] && flags[p]);
        }
        return any;
    };

    for (std::size_t j : index.thermal_order()) {
        const auto& u = system.thermal_units[j];
        const auto inv = index.thermal_invest(j);
        for (std::size_t t = 0; t < T; ++t) {
            if (provides(u.reserve_eligible, kUp)) {
                const std::size_t row = lp.add_row(col_name("head", u.id, t), -kInf, inv ? 0.0 : u.pmax);
                lp.add_entry(row, index.thermal_p(j, t), 1.0);
                for (ReserveProduct p : kUp) {
                    if (active[static_cast<std::size_t>(p)] && u.reserve_eligible[static_cast<std::size_t>(p)]) {
                        lp.add_entry(row, index.thermal_reserve(j, p, t), 1.0);
                    }
                }
                if (inv) lp.add_entry(row, *inv, -u.pmax);
            }
            if (provides(u.reserve_eligible, kDown)) {
                const std::size_t row = lp.add_row(col_name("foot", u.id, t), -kInf, 0.0);
                lp.add_entry(row, index.thermal_p(j, t), -1.0);
                for (ReserveProduct p : kDown) {
                    if (active[static_cast<std::size_t>(p)] && u.reserve_eligible[static_cast<std::size_t>(p)]) {
                        lp.add_entry(row, index.thermal_reserve(j, p, t), 1.0);
                    }
                }
            }
        }
    }

    for (std::size_t k : index.storage_order()) {
        const auto& s = system.storage_units[k];
        const auto inv = index.storage_invest(k);
        for (std::size_t t = 0; t < T; ++t) {
            if (provides(s.reserve_eligible, kUp)) {
                const std::size_t row = lp.add_row(col_name("shead", s.id, t), -kInf, inv ? 0.0 : s.p_discharge_max);
                lp.add_entry(row, index.discharge(k, t), 1.0);
                for (ReserveProduct p : kUp) {
                    if (active[static_cast<std::size_t>(p)] && s.reserve_eligible[static_cast<std::size_t>(p)]) {
                        lp.add_entry(row, index.storage_reserve(k, p, t), 1.0);
                    }
                }
                if (inv) lp.add_entry(row, *inv, -s.p_discharge_max);
            }
            if (provides(s.reserve_eligible, kDown)) {
                const std::size_t row = lp.add_row(col_name("sfoot", s.id, t), -kInf, 0.0);
                lp.add_entry(row, index.discharge(k, t), -1.0);
                for (ReserveProduct p : kDown) {
                    if (active[static_cast<std::size_t>(p)] && s.reserve_eligible[static_cast<std::size_t>(p)]) {
                        lp.add_entry(row, index.storage_reserve(k, p, t), 1.0);
                    }
                }
            }
        }
    }

    for (std::size_t p = 0; p < kReserveProducts; ++p) {
        if (!active[p]) continue;
        const auto prod = static_cast<ReserveProduct>(p);
        for (std::size_t t = 0; t < T; ++t) {
            const double req = system.reserve.requirement[p][t];
            const std::size_t row = lp.add_row(std::string("req_") + kProductTag[p] + "_" + std::to_string(t), req, kInf);
            for (std::size_t j : index.thermal_order()) {
                if (system.thermal_units[j].reserve_eligible[p]) lp.add_entry(row, index.thermal_reserve(j, prod, t), 1.0);
            }
            for (std::size_t k : index.storage_order()) {
                if (system.storage_units[k].reserve_eligible[p]) lp.add_entry(row, index.storage_reserve(k, prod, t), 1.0);
            }
        }
    }
}

BuiltLp build_lp(const SystemModel& system, const ScenarioConfig& config) {
    BuiltLp out;
    out.index = VariableIndex(system);
    out.problem = make_columns(system, out.index);
    out.problem.cost = build_objective(system, config, out.index);
    add_thermal_constraints(system, out.index, out.problem);
    add_storage_constraints(system, out.index, out.problem);
    add_renewable_constraints(system, config, out.index, out.problem);
    add_network_constraints(system, out.index, out.problem);
    add_shifting_constraints(system, config, out.index, out.problem);
    add_reserve_constraints(system, out.index, out.problem);
    return out;
}

std::optional<std::size_t> find_row(const LPProblem& lp, const std::string& name) {
    auto it = std::find(lp.row_names.begin(), lp.row_names.end(), name);
    if (it == lp.row_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - lp.row_names.begin());
}

}  // namespace gep
