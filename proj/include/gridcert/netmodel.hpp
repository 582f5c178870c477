#pragma once

// Network data model: buses, branches, shunts, and the complex bus admittance
// matrix built from standard pi-model branch stamps.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "gridcert/errors.hpp"

namespace gridcert {

enum class BusKind { PQ, PV, Slack };

inline const char* to_string(BusKind k) {
    switch (k) {
        case BusKind::PQ: return "PQ";
        case BusKind::PV: return "PV";
        case BusKind::Slack: return "Slack";
    }
    return "?";
}

struct Bus {
    int id = 0;
    BusKind kind = BusKind::PQ;
    double p_inj = 0.0;   // net active injection, per-unit (generation minus load)
    double q_inj = 0.0;   // net reactive injection, per-unit (meaningful at PQ buses)
    double v_set = 1.0;   // voltage setpoint, per-unit (PV and slack)
    double shunt_g = 0.0;
    double shunt_b = 0.0;
};

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0.0;
    double x = 0.0;
    double b_charging = 0.0;  // total line charging susceptance
    double tap = 1.0;         // off-nominal turns ratio on the from side
    double phase_shift = 0.0; // radians
};

struct ZeroImpedanceBranchError : Error {
    ZeroImpedanceBranchError(int from, int to)
        : Error("branch " + std::to_string(from) + "-" + std::to_string(to) +
                " has zero series impedance") {}
};

struct DisconnectedNetworkError : Error {
    std::vector<std::vector<int>> components;  // bus ids per island
    explicit DisconnectedNetworkError(std::vector<std::vector<int>> comps)
        : Error(describe(comps)), components(std::move(comps)) {}

    static std::string describe(const std::vector<std::vector<int>>& comps) {
        std::ostringstream os;
        os << "network is not connected; " << comps.size() << " islands:";
        for (const auto& c : comps) {
            os << " {";
            for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
            os << "}";
        }
        return os.str();
    }
};

struct ModelValidationError : Error {
    using Error::Error;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::complex<double> operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double g(std::size_t i, std::size_t j) const { return data_[i * n_ + j].real(); }
    double b(std::size_t i, std::size_t j) const { return data_[i * n_ + j].imag(); }

private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> data_;
};

class NetworkModel;
inline ComplexMatrix build_admittance(const NetworkModel& model);

/// Immutable validated network. Construction checks the single-slack rule,
/// setpoint positivity, branch impedances, id references and connectivity,
/// then builds the admittance matrix once.
class NetworkModel {
public:
    NetworkModel(std::vector<Bus> buses, std::vector<Branch> branches)
        : buses_(std::move(buses)), branches_(std::move(branches)) {
        validate(true);
        y_ = build_admittance(*this);
    }

    /// Skips the connectivity check (used by tests that probe degenerate
    /// networks); everything else is still validated.
    static NetworkModel unchecked(std::vector<Bus> buses, std::vector<Branch> branches) {
        NetworkModel m;
        m.buses_ = std::move(buses);
        m.branches_ = std::move(branches);
        m.validate(false);
        m.y_ = build_admittance(m);
        return m;
    }

    const std::vector<Bus>& buses() const { return buses_; }
    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t size() const { return buses_.size(); }

    std::size_t slack_index() const { return slack_; }
    const Bus& slack() const { return buses_[slack_]; }

    std::size_t index_of(int bus_id) const {
        auto it = index_.find(bus_id);
        if (it == index_.end())
            throw InvalidArgumentError("unknown bus id " + std::to_string(bus_id));
        return it->second;
    }

    const ComplexMatrix& y_matrix() const { return y_; }

    /// True when every branch and shunt is purely reactive, so G == 0 exactly.
    bool lossless() const {
        for (const auto& br : branches_)
            if (br.r != 0.0 || br.phase_shift != 0.0) return false;
        for (const auto& bus : buses_)
            if (bus.shunt_g != 0.0) return false;
        return true;
    }

    std::vector<std::size_t> pq_indices() const { return kind_indices(BusKind::PQ); }
    std::vector<std::size_t> pv_indices() const { return kind_indices(BusKind::PV); }

    std::vector<std::size_t> nonslack_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < buses_.size(); ++i)
            if (i != slack_) out.push_back(i);
        return out;
    }

private:
    NetworkModel() = default;

    std::vector<std::size_t> kind_indices(BusKind k) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < buses_.size(); ++i)
            if (buses_[i].kind == k) out.push_back(i);
        return out;
    }

    void validate(bool check_connectivity) {
        if (buses_.empty()) throw ModelValidationError("model has no buses");
        index_.clear();
        std::size_t slack_count = 0;
        for (std::size_t i = 0; i < buses_.size(); ++i) {
            const Bus& b = buses_[i];
            if (!index_.emplace(b.id, i).second)
                throw ModelValidationError("duplicate bus id " + std::to_string(b.id));
            if (b.kind == BusKind::Slack) {
                slack_ = i;
                ++slack_count;
            }
            if ((b.kind == BusKind::PV || b.kind == BusKind::Slack) && !(b.v_set > 0.0))
                throw ModelValidationError("bus " + std::to_string(b.id) +
                                           " needs a positive voltage setpoint");
        }
        if (slack_count != 1)
            throw ModelValidationError("model must have exactly one slack bus, found " +
                                       std::to_string(slack_count));
        for (const auto& br : branches_) {
            if (br.r == 0.0 && br.x == 0.0) throw ZeroImpedanceBranchError(br.from, br.to);
            if (br.r < 0.0)
                throw ModelValidationError("branch " + std::to_string(br.from) + "-" +
                                           std::to_string(br.to) + " has negative resistance");
            if (!(br.tap > 0.0))
                throw ModelValidationError("branch " + std::to_string(br.from) + "-" +
                                           std::to_string(br.to) + " has non-positive tap");
            index_of(br.from);
            index_of(br.to);
        }
        if (check_connectivity) ensure_connected();
    }

    void ensure_connected() const {
        const std::size_t n = buses_.size();
        std::vector<std::vector<std::size_t>> adj(n);
        for (const auto& br : branches_) {
            const std::size_t f = index_.at(br.from);
            const std::size_t t = index_.at(br.to);
            adj[f].push_back(t);
            adj[t].push_back(f);
        }
        std::vector<int> comp(n, -1);
        int ncomp = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (comp[s] >= 0) continue;
            std::queue<std::size_t> q;
            q.push(s);
            comp[s] = ncomp;
            while (!q.empty()) {
                const std::size_t u = q.front();
                q.pop();
                for (std::size_t v : adj[u]) {
                    if (comp[v] < 0) {
                        comp[v] = ncomp;
                        q.push(v);
                    }
                }
            }
            ++ncomp;
        }
        if (ncomp > 1) {
            std::vector<std::vector<int>> groups(ncomp);
            for (std::size_t i = 0; i < n; ++i) groups[comp[i]].push_back(buses_[i].id);
            throw DisconnectedNetworkError(std::move(groups));
        }
    }

    std::vector<Bus> buses_;
    std::vector<Branch> branches_;
    std::map<int, std::size_t> index_;
    std::size_t slack_ = 0;
    ComplexMatrix y_;
};

/// Bus admittance matrix from pi-model stamps. Series admittance is scaled by
/// the complex tap on the from side, line charging splits half per end, and
/// bus shunts land on the diagonal.
inline ComplexMatrix build_admittance(const NetworkModel& model) {
    using cx = std::complex<double>;
    const std::size_t n = model.size();
    ComplexMatrix y(n);
    for (const auto& br : model.branches()) {
        if (br.r == 0.0 && br.x == 0.0) throw ZeroImpedanceBranchError(br.from, br.to);
        const std::size_t f = model.index_of(br.from);
        const std::size_t t = model.index_of(br.to);
        const cx ys = 1.0 / cx(br.r, br.x);
        const cx ysh(0.0, br.b_charging / 2.0);
        const cx tap = std::polar(br.tap, br.phase_shift);
        y(f, f) += (ys + ysh) / (tap * std::conj(tap));
        y(f, t) += -ys / std::conj(tap);
        y(t, f) += -ys / tap;
        y(t, t) += ys + ysh;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Bus& b = model.buses()[i];
        y(i, i) += cx(b.shunt_g, b.shunt_b);
    }
    return y;
}

/// Returns a copy with specified injections multiplied uniformly: P and Q at
/// PQ buses, P at PV buses. Setpoints and the slack are untouched.
inline NetworkModel scale_injections(const NetworkModel& model, double multiplier) {
    if (!(multiplier > 0.0))
        throw InvalidArgumentError("injection multiplier must be positive");
    std::vector<Bus> buses = model.buses();
    for (Bus& b : buses) {
        if (b.kind == BusKind::PQ) {
            b.p_inj *= multiplier;
            b.q_inj *= multiplier;
        } else if (b.kind == BusKind::PV) {
            b.p_inj *= multiplier;
        }
    }
    return NetworkModel(std::move(buses), model.branches());
}

/// Voltage setpoint ratios alpha_k = V_k / V_slack for every PV bus, keyed by
/// bus id.
inline std::map<int, double> alpha_ratios(const NetworkModel& model) {
    const double v0 = model.slack().v_set;
    if (!(v0 > 0.0)) throw ModelValidationError("slack bus is missing its voltage setpoint");
    std::map<int, double> alphas;
    for (const auto& b : model.buses()) {
        if (b.kind != BusKind::PV) continue;
        if (!(b.v_set > 0.0))
            throw ModelValidationError("PV bus " + std::to_string(b.id) +
                                       " is missing its voltage setpoint");
        alphas[b.id] = b.v_set / v0;
    }
    return alphas;
}

}  // namespace gridcert
