#include "gep/validate.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace gep {

namespace {

class Checker {
public:
    explicit Checker(std::vector<Violation>& out) : out_(out) {}

    void require(bool ok, const std::string& entity, const std::string& message) {
        if (!ok) out_.push_back({entity, message});
    }

    void series(const Series& s, std::size_t horizon, const std::string& entity, const std::string& what) {
        if (s.size() != horizon) {
            std::ostringstream msg;
            msg << what << " has length " << s.size() << ", expected " << horizon;
            out_.push_back({entity, msg.str()});
            return;
        }
        for (double v : s) {
            if (!std::isfinite(v)) {
                out_.push_back({entity, what + " contains a non-finite value"});
                return;
            }
        }
    }

    void non_negative(double v, const std::string& entity, const std::string& what) {
        require(std::isfinite(v) && v >= 0.0, entity, what + " must be finite and >= 0");
    }

private:
    std::vector<Violation>& out_;
};

}  // namespace

std::vector<Violation> validate_system(const SystemModel& system) {
    std::vector<Violation> out;
    Checker check(out);
    const std::size_t T = system.horizon;

    std::set<std::string> node_ids;
    std::size_t slack_count = 0;
    for (const auto& n : system.nodes) {
        const std::string entity = "node " + n.id;
        check.require(!n.id.empty(), entity, "empty id");
        check.require(node_ids.insert(n.id).second, entity, "duplicate node id");
        if (n.is_slack) ++slack_count;
        check.series(n.demand.heat_pump, T, entity, "heat_pump demand");
        check.series(n.demand.e_mobility, T, entity, "e_mobility demand");
        check.series(n.demand.hydrogen, T, entity, "hydrogen demand");
        check.series(n.demand.base, T, entity, "base demand");
        if (n.exogenous_injection) check.series(*n.exogenous_injection, T, entity, "exogenous injection");
        check.non_negative(n.shift.e_hr_max, entity, "e_hr_max");
        check.non_negative(n.shift.e_day_max, entity, "e_day_max");
        check.non_negative(n.shift.l_hr_max, entity, "l_hr_max");
        check.non_negative(n.shift.l_day_max, entity, "l_day_max");
    }
    check.require(slack_count == 1, "system",
                  "exactly one slack node required, found " + std::to_string(slack_count));

    std::set<std::string> line_ids;
    for (const auto& l : system.lines) {
        const std::string entity = "line " + l.id;
        check.require(line_ids.insert(l.id).second, entity, "duplicate line id");
        check.require(l.from_node != l.to_node, entity, "from_node equals to_node");
        const BusNode* from = system.find_node(l.from_node);
        const BusNode* to = system.find_node(l.to_node);
        check.require(from != nullptr, entity, "unknown from_node '" + l.from_node + "'");
        check.require(to != nullptr, entity, "unknown to_node '" + l.to_node + "'");
        check.require(std::isfinite(l.susceptance) && l.susceptance > 0.0, entity, "susceptance must be > 0");
        check.non_negative(l.flow_limit, entity, "flow limit");
        if (from && to) {
            check.require(l.cross_border == (from->country != to->country), entity,
                          "cross_border flag disagrees with endpoint countries");
        }
    }

    std::set<std::string> unit_ids;
    auto unit_common = [&](const std::string& id, const std::string& node, const std::string& entity) {
        check.require(!id.empty(), entity, "empty id");
        check.require(unit_ids.insert(id).second, entity, "duplicate unit id");
        check.require(node_ids.count(node) == 1, entity, "unknown node '" + node + "'");
    };
    auto investment = [&](bool candidate, double inv, double alpha, const std::string& entity) {
        check.non_negative(inv, entity, "investment cost");
        check.non_negative(alpha, entity, "annuity factor");
        check.require(candidate || inv == 0.0, entity, "existing unit must have zero investment cost");
    };

    for (const auto& u : system.thermal_units) {
        const std::string entity = "thermal " + u.id;
        unit_common(u.id, u.node, entity);
        check.require(std::isfinite(u.pmax) && u.pmax > 0.0, entity, "pmax must be > 0");
        check.non_negative(u.ramp_up, entity, "ramp_up");
        check.non_negative(u.ramp_down, entity, "ramp_down");
        check.non_negative(u.cost_voc, entity, "voc");
        check.non_negative(u.cost_fuel, entity, "fuel cost");
        check.non_negative(u.cost_emi, entity, "emission cost");
        investment(u.is_candidate, u.inv_cost_annual, u.annuity_alpha, entity);
        if (u.p_initial) {
            check.require(*u.p_initial >= 0.0 && *u.p_initial <= u.pmax, entity, "initial dispatch outside [0, pmax]");
        }
    }

    for (const auto& s : system.storage_units) {
        const std::string entity = "storage " + s.id;
        unit_common(s.id, s.node, entity);
        check.non_negative(s.p_charge_max, entity, "p_charge_max");
        check.non_negative(s.p_discharge_max, entity, "p_discharge_max");
        check.non_negative(s.energy_max, entity, "energy_max");
        check.require(s.soc_initial >= 0.0 && s.soc_initial <= s.energy_max, entity, "soc_initial outside [0, energy_max]");
        check.require(s.soc_final_min >= 0.0 && s.soc_final_min <= s.energy_max, entity,
                      "soc_final_min outside [0, energy_max]");
        check.require(s.eta_charge > 0.0 && s.eta_charge <= 1.0, entity, "eta_charge outside (0, 1]");
        check.require(s.eta_discharge > 0.0 && s.eta_discharge <= 1.0, entity, "eta_discharge outside (0, 1]");
        check.require(s.kind != StorageKind::dam || s.p_charge_max == 0.0, entity, "dam must have p_charge_max = 0");
        check.series(s.inflow, T, entity, "inflow");
        if (s.kind == StorageKind::battery) {
            bool zero = true;
            for (double v : s.inflow) zero = zero && v == 0.0;
            check.require(zero, entity, "battery inflow must be zero");
        }
        check.non_negative(s.cost_voc, entity, "voc");
        investment(s.is_candidate, s.inv_cost_annual, s.annuity_alpha, entity);
    }

    for (const auto& r : system.renewable_units) {
        const std::string entity = "renewable " + r.id;
        unit_common(r.id, r.node, entity);
        check.require(std::isfinite(r.capacity) && r.capacity > 0.0, entity, "capacity must be > 0");
        check.series(r.profile, T, entity, "availability profile");
        for (double v : r.profile) {
            if (v < 0.0 || v > 1.0) {
                check.require(false, entity, "availability profile value outside [0, 1]");
                break;
            }
        }
        check.non_negative(r.cost_voc, entity, "voc");
        investment(r.is_candidate, r.inv_cost_annual, r.annuity_alpha, entity);
    }

    for (std::size_t p = 0; p < kReserveProducts; ++p) {
        const std::string entity = "reserve " + to_string(static_cast<ReserveProduct>(p));
        const Series& req = system.reserve.requirement[p];
        check.series(req, T, entity, "requirement");
        for (double v : req) {
            if (v < 0.0) {
                check.require(false, entity, "negative requirement");
                break;
            }
        }
    }
    return out;
}

std::vector<Violation> validate_config(const ScenarioConfig& config) {
    std::vector<Violation> out;
    Checker check(out);
    const std::string entity = "scenario " + config.name;
    check.require(config.xborder_scale >= 0.0 && config.xborder_scale <= 1.0, entity, "xborder_scale outside [0, 1]");
    check.non_negative(config.gas_price_multiplier, entity, "gas_price_multiplier");
    check.non_negative(config.res_target, entity, "res_target");
    check.non_negative(config.cost_load_shed, entity, "cost_load_shed");
    check.require(config.horizon % 24 == 0, entity, "horizon must be a multiple of 24 hours");
    return out;
}

}  // namespace gep
