#include "tugsched/mip.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "tugsched/error.hpp"

namespace tug {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Vertex {
    std::string label;
    NodeId node = 0;
    NodeKind kind = NodeKind::Source;
    int copy = 0;  // 1 or 2 for typeE destination copies
};

using Term = std::pair<double, std::string>;

class LpBuilder {
public:
    void objective(double c, const std::string& var) {
        if (c != 0.0) {
            obj_.emplace_back(c, var);
        }
    }

    void row(const std::string& name, const std::vector<Term>& terms, const char* sense, double rhs) {
        std::ostringstream out;
        out << ' ' << name << ':';
        write_terms(out, terms);
        out << ' ' << sense << ' ' << num(rhs) << '\n';
        rows_ << out.str();
        ++rows_count_;
    }

    void bound(const std::string& var, double lo, std::optional<double> hi) {
        if (hi) {
            bounds_ << ' ' << num(lo) << " <= " << var << " <= " << num(*hi) << '\n';
        } else {
            bounds_ << ' ' << var << " >= " << num(lo) << '\n';
        }
    }

    void binary(const std::string& var) { binaries_.push_back(var); }
    void general(const std::string& var) { generals_.push_back(var); }

    std::string str() const {
        std::ostringstream out;
        out << "\\ tugboat scheduling model\n";
        out << "Minimize\n obj:";
        if (obj_.empty()) {
            out << " 0 x_s_sp_0";
        } else {
            write_terms(out, obj_);
        }
        out << "\nSubject To\n" << rows_.str();
        out << "Bounds\n" << bounds_.str();
        write_list(out, "Binaries", binaries_);
        write_list(out, "Generals", generals_);
        out << "End\n";
        return out.str();
    }

    std::size_t rows() const { return rows_count_; }

private:
    static void write_terms(std::ostream& out, const std::vector<Term>& terms) {
        int on_line = 0;
        for (const auto& [c, v] : terms) {
            if (on_line == 8) {
                out << "\n  ";
                on_line = 0;
            }
            out << (c < 0 ? " - " : " + ");
            const double a = std::abs(c);
            if (a != 1.0) {
                out << num(a) << ' ';
            }
            out << v;
            ++on_line;
        }
        if (terms.empty()) {
            out << " 0 x_s_sp_0";
        }
    }

    static void write_list(std::ostream& out, const char* title, const std::vector<std::string>& vars) {
        if (vars.empty()) {
            return;
        }
        out << title << '\n';
        for (std::size_t i = 0; i < vars.size(); i += 8) {
            for (std::size_t k = i; k < std::min(vars.size(), i + 8); ++k) {
                out << ' ' << vars[k];
            }
            out << '\n';
        }
    }

    std::vector<Term> obj_;
    std::ostringstream rows_;
    std::size_t rows_count_ = 0;
    std::ostringstream bounds_;
    std::vector<std::string> binaries_;
    std::vector<std::string> generals_;
};

std::string sfx(int p) { return "_" + std::to_string(p); }

}  // namespace

LpModel export_lp(const Instance& inst, const MipConfig& cfg) {
    const int P = inst.tugboat_count();
    const int K = inst.capacity();

    std::vector<Vertex> V;
    V.push_back({"s", inst.source(), NodeKind::Source, 0});
    for (NodeId i = 0; i < inst.node_count() - 2; ++i) {
        const NodeKind k = inst.kind(i);
        if (k == NodeKind::EDestination) {
            V.push_back({std::to_string(i) + "c1", i, k, 1});
            V.push_back({std::to_string(i) + "c2", i, k, 2});
        } else {
            V.push_back({std::to_string(i), i, k, 0});
        }
    }
    V.push_back({"sp", inst.sink(), NodeKind::Sink, 0});
    const auto nv = V.size();
    const std::size_t inner = nv - 2;
    const double order_m = static_cast<double>(inner + 1);

    // Variable count check before emitting anything.
    const std::size_t arcs = (nv - 1) * (nv - 1) - (nv - 2);
    const std::size_t per_tug = arcs + 6 * nv + static_cast<std::size_t>(inst.barge_count()) *
                                                     static_cast<std::size_t>(inst.e_count()) * 2 +
                                static_cast<std::size_t>(inst.e_count()) * 6;
    const std::size_t total = per_tug * static_cast<std::size_t>(P);
    if (total > cfg.max_variables) {
        throw TooLarge("model needs about " + std::to_string(total) + " variables, cap is " +
                       std::to_string(cfg.max_variables));
    }

    double horizon = 0.0;
    for (int p = 0; p < P; ++p) {
        horizon = std::max(horizon, inst.tugboat(p).max_working_time);
    }
    if (cfg.time_horizon) {
        horizon = *cfg.time_horizon;
    }
    const double tm = cfg.big_m.value_or(2.0 * horizon + inst.max_travel_time());
    const double load_m_full = K + 1;
    const double load_m_empty = 2 * K;

    auto x = [&](std::size_t i, std::size_t j, int p) { return "x_" + V[i].label + "_" + V[j].label + sfx(p); };
    auto z = [&](std::size_t i, int p) { return "z_" + V[i].label + sfx(p); };
    auto st = [&](std::size_t i, int p) { return "s_" + V[i].label + sfx(p); };
    auto yf = [&](std::size_t i, int p) { return "yf_" + V[i].label + sfx(p); };
    auto ye = [&](std::size_t i, int p) { return "ye_" + V[i].label + sfx(p); };
    auto ord = [&](std::size_t i, int p) { return "o_" + V[i].label + sfx(p); };
    auto drop = [&](int h, int t, int p) { return "drop_" + std::to_string(h) + "_" + std::to_string(t) + sfx(p); };
    auto w = [&](int h, int t, int p) { return "w_" + std::to_string(h) + "_" + std::to_string(t) + sfx(p); };
    auto a = [&](int b, int h, int t, int p) {
        return "a_" + std::to_string(b) + "_" + std::to_string(h) + "_" + std::to_string(t) + sfx(p);
    };
    auto has_arc = [&](std::size_t i, std::size_t j) { return i != j && i != nv - 1 && j != 0; };
    // Incoming arcs of vertex j, as terms with coefficient c.
    auto in_terms = [&](std::size_t j, int p, double c) {
        std::vector<Term> t;
        for (std::size_t i = 0; i < nv; ++i) {
            if (has_arc(i, j)) {
                t.emplace_back(c, x(i, j, p));
            }
        }
        return t;
    };
    auto out_terms = [&](std::size_t i, int p, double c) {
        std::vector<Term> t;
        for (std::size_t j = 0; j < nv; ++j) {
            if (has_arc(i, j)) {
                t.emplace_back(c, x(i, j, p));
            }
        }
        return t;
    };
    auto concat = [](std::vector<Term> l, const std::vector<Term>& r) {
        l.insert(l.end(), r.begin(), r.end());
        return l;
    };
    auto vertex_of = [&](NodeId node, int copy) {
        for (std::size_t i = 0; i < nv; ++i) {
            if (V[i].node == node && V[i].copy == copy) {
                return i;
            }
        }
        return nv;
    };

    LpBuilder lp;

    // Objective: sailing time and distance costs over all arcs.
    for (int p = 0; p < P; ++p) {
        const Tugboat& tb = inst.tugboat(p);
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                if (has_arc(i, j)) {
                    lp.objective(tb.cost_per_time * inst.time(V[i].node, V[j].node) +
                                     tb.cost_per_distance * inst.distance(V[i].node, V[j].node),
                                 x(i, j, p));
                }
            }
        }
    }

    for (int p = 0; p < P; ++p) {
        // C1, C2: leave s once, reach s' once.
        lp.row("c1" + sfx(p), out_terms(0, p, 1.0), "=", 1);
        lp.row("c2" + sfx(p), in_terms(nv - 1, p, 1.0), "=", 1);
        // C8: flow conservation.
        for (std::size_t j = 1; j + 1 < nv; ++j) {
            lp.row("c8_" + V[j].label + sfx(p), concat(in_terms(j, p, 1.0), out_terms(j, p, -1.0)), "=", 0);
        }
    }

    // C3, C4: every typeF node covered exactly once. C6: barges at most once.
    for (std::size_t j = 1; j + 1 < nv; ++j) {
        std::vector<Term> all;
        for (int p = 0; p < P; ++p) {
            all = concat(all, in_terms(j, p, 1.0));
        }
        switch (V[j].kind) {
            case NodeKind::FOrigin: lp.row("c3_" + V[j].label, all, "=", 1); break;
            case NodeKind::FDestination: lp.row("c4_" + V[j].label, all, "=", 1); break;
            case NodeKind::Barge: lp.row("c6_" + V[j].label, all, "<=", 1); break;
            default: break;
        }
    }

    // Visit indicators of typeE copies, C5 in per-order form, C12-C14.
    auto u = [&](int h, int t, int p) { return "u_" + std::to_string(h) + "_" + std::to_string(t) + sfx(p); };
    for (int h = 0; h < inst.e_count(); ++h) {
        const NodeId hn = inst.e_destination(h);
        std::vector<Term> first_visits;
        for (int p = 0; p < P; ++p) {
            for (int t = 1; t <= 2; ++t) {
                auto terms = in_terms(vertex_of(hn, t), p, 1.0);
                terms.emplace_back(-1.0, u(h, t, p));
                lp.row("visit_" + std::to_string(h) + "_" + std::to_string(t) + sfx(p), terms, "=", 0);
            }
            first_visits.emplace_back(1.0, u(h, 1, p));
            lp.row("c14_" + std::to_string(h) + sfx(p), {{1.0, u(h, 2, p)}, {-1.0, u(h, 1, p)}}, "<=", 0);
            lp.row("c12_" + std::to_string(h) + sfx(p), {{1.0, drop(h, 2, p)}, {-double(K), drop(h, 1, p)}}, "<=",
                   0);
            const std::size_t v1 = vertex_of(hn, 1);
            const std::size_t v2 = vertex_of(hn, 2);
            lp.row("c13_" + std::to_string(h) + sfx(p),
                   {{1.0, ord(v2, p)}, {-1.0, ord(v1, p)}, {-order_m, u(h, 2, p)}}, ">=", 1 - order_m);
        }
        lp.row("c5a_" + std::to_string(h), first_visits, ">=", 1);
        lp.row("c5b_" + std::to_string(h), first_visits, "<=", 2);
    }

    for (int p = 0; p < P; ++p) {
        // C7: a visited barge is collected for exactly one typeE visit.
        for (int b = 0; b < inst.barge_count(); ++b) {
            const std::size_t vb = vertex_of(inst.barge_node(b), 0);
            auto terms = in_terms(vb, p, -1.0);
            for (int h = 0; h < inst.e_count(); ++h) {
                for (int t = 1; t <= 2; ++t) {
                    terms.emplace_back(1.0, a(b, h, t, p));
                }
            }
            lp.row("c7_" + std::to_string(b) + sfx(p), terms, "=", 0);
        }
        // C9: both ends of a typeF order on the same tugboat, origin first.
        for (int k = 0; k < inst.f_count(); ++k) {
            const std::size_t vo = vertex_of(inst.f_origin(k), 0);
            const std::size_t vd = vertex_of(inst.f_destination(k), 0);
            lp.row("c9_" + std::to_string(k) + sfx(p), concat(in_terms(vo, p, 1.0), in_terms(vd, p, -1.0)), "=", 0);
            auto prec = in_terms(vo, p, -order_m);
            prec.emplace_back(1.0, ord(vd, p));
            prec.emplace_back(-1.0, ord(vo, p));
            lp.row("c9o_" + std::to_string(k) + sfx(p), prec, ">=", 1 - order_m);
        }
        // C10, C11 share, linearisation, trip scoping.
        for (int h = 0; h < inst.e_count(); ++h) {
            const NodeId hn = inst.e_destination(h);
            for (int t = 1; t <= 2; ++t) {
                const std::string ht = std::to_string(h) + "_" + std::to_string(t) + sfx(p);
                std::vector<Term> bal;
                for (int b = 0; b < inst.barge_count(); ++b) {
                    bal.emplace_back(1.0, a(b, h, t, p));
                }
                bal.emplace_back(-1.0, w(h, t, p));
                lp.row("c10_" + ht, bal, "=", 0);
                lp.row("lin1_" + ht, {{1.0, w(h, t, p)}, {-double(K), u(h, t, p)}}, "<=", 0);
                lp.row("lin2_" + ht, {{1.0, w(h, t, p)}, {-1.0, drop(h, t, p)}}, "<=", 0);
                lp.row("lin3_" + ht, {{1.0, w(h, t, p)}, {-1.0, drop(h, t, p)}, {-double(K), u(h, t, p)}}, ">=",
                       -K);
                lp.row("minw_" + ht, {{1.0, w(h, t, p)}, {-1.0, u(h, t, p)}}, ">=", 0);
                lp.row("dropu_" + ht, {{1.0, drop(h, t, p)}, {-double(K), u(h, t, p)}}, "<=", 0);
                const std::size_t vh = vertex_of(hn, t);
                for (int b = 0; b < inst.barge_count(); ++b) {
                    const std::size_t vb = vertex_of(inst.barge_node(b), 0);
                    const std::string bht = std::to_string(b) + "_" + ht;
                    lp.row("trip_" + bht, {{1.0, ord(vh, p)}, {-1.0, ord(vb, p)}, {-order_m, a(b, h, t, p)}}, ">=",
                           1 - order_m);
                    if (t == 2) {
                        const std::size_t v1 = vertex_of(hn, 1);
                        lp.row("trip2_" + bht,
                               {{1.0, ord(vb, p)}, {-1.0, ord(v1, p)}, {-order_m, a(b, h, t, p)}}, ">=",
                               1 - order_m);
                    }
                    // C24: the visit follows the barge's departure.
                    lp.row("c24_" + bht,
                           {{1.0, z(vh, p)}, {-1.0, z(vb, p)}, {-1.0, st(vb, p)}, {-tm, a(b, h, t, p)}}, ">=",
                           inst.time(inst.barge_node(b), hn) - tm);
                }
            }
        }
    }
    for (int h = 0; h < inst.e_count(); ++h) {
        std::vector<Term> terms;
        for (int p = 0; p < P; ++p) {
            for (int t = 1; t <= 2; ++t) {
                terms.emplace_back(1.0, drop(h, t, p));
            }
        }
        lp.row("c11_" + std::to_string(h), terms, "=", inst.order_e(h).required_barges);
    }

    for (int p = 0; p < P; ++p) {
        const Tugboat& tb = inst.tugboat(p);
        // Subtour elimination through visit order.
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 1; j + 1 < nv; ++j) {
                if (!has_arc(i, j)) {
                    continue;
                }
                std::vector<Term> terms{{1.0, ord(j, p)}, {-order_m, x(i, j, p)}};
                if (i != 0) {
                    terms.emplace_back(-1.0, ord(i, p));
                }
                lp.row("mtz_" + V[i].label + "_" + V[j].label + sfx(p), terms, ">=", 1 - order_m);
            }
        }
        // C22, C23: time propagation along arcs.
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                if (!has_arc(i, j)) {
                    continue;
                }
                lp.row("c22_" + V[i].label + "_" + V[j].label + sfx(p),
                       {{1.0, z(j, p)}, {-1.0, z(i, p)}, {-1.0, st(i, p)}, {-tm, x(i, j, p)}}, ">=",
                       inst.time(V[i].node, V[j].node) - tm);
            }
        }
        for (int k = 0; k < inst.f_count(); ++k) {
            const std::size_t vo = vertex_of(inst.f_origin(k), 0);
            const std::size_t vd = vertex_of(inst.f_destination(k), 0);
            auto terms = in_terms(vo, p, -tm);
            terms.emplace_back(1.0, z(vd, p));
            terms.emplace_back(-1.0, z(vo, p));
            terms.emplace_back(-1.0, st(vo, p));
            lp.row("c23_" + std::to_string(k) + sfx(p), terms, ">=",
                   inst.time(inst.f_origin(k), inst.f_destination(k)) - tm);
        }
        // C15, C28.
        lp.row("c15" + sfx(p), {{1.0, z(nv - 1, p)}, {-1.0, z(0, p)}}, "<=", tb.max_working_time);
        lp.row("c28" + sfx(p), {{1.0, z(0, p)}}, "=", 0);
        // C16, C18-C21: readiness and windows on visited nodes.
        for (std::size_t i = 1; i + 1 < nv; ++i) {
            const NodeInfo& info = inst.node(V[i].node);
            auto visited = in_terms(i, p, 1.0);
            if (V[i].kind == NodeKind::Barge) {
                const double idle = inst.barge(info.ref).idle_until;
                auto terms = in_terms(i, p, -idle);
                terms.emplace_back(1.0, z(i, p));
                terms.emplace_back(1.0, st(i, p));
                lp.row("c16_" + V[i].label + sfx(p), terms, ">=", 0);
            }
            const bool h_copy = V[i].kind == NodeKind::EDestination;
            const std::string early = h_copy ? "c20_" : "c18_";
            const std::string late = h_copy ? "c21_" : "c19_";
            if (info.window.earliest > 0.0) {
                auto terms = in_terms(i, p, -info.window.earliest);
                terms.emplace_back(1.0, z(i, p));
                terms.emplace_back(1.0, st(i, p));
                lp.row(early + V[i].label + sfx(p), terms, ">=", 0);
            }
            if (info.window.latest != kUnbounded) {
                auto terms = in_terms(i, p, tm);
                terms.emplace_back(1.0, z(i, p));
                lp.row(late + V[i].label + sfx(p), terms, "<=", info.window.latest + tm);
            }
        }
        // C17a, C17b: capacity and loads only on visited nodes.
        for (std::size_t j = 1; j < nv; ++j) {
            lp.row("c17a_" + V[j].label + sfx(p), {{1.0, yf(j, p)}, {1.0, ye(j, p)}}, "<=", K);
            auto terms = in_terms(j, p, -double(K));
            terms.emplace_back(1.0, yf(j, p));
            terms.emplace_back(1.0, ye(j, p));
            lp.row("c17b_" + V[j].label + sfx(p), terms, "<=", 0);
        }
        // C25-C27 with equality in both directions.
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                if (!has_arc(i, j)) {
                    continue;
                }
                const std::string ij = V[i].label + "_" + V[j].label + sfx(p);
                const std::string xij = x(i, j, p);
                double dfull = 0.0;
                double dempty = 0.0;
                std::string dropvar;
                std::string tag_f = "lf";
                std::string tag_e = "le";
                switch (V[j].kind) {
                    case NodeKind::FOrigin: dfull = 1.0; tag_f = "c25"; break;
                    case NodeKind::FDestination: dfull = -1.0; tag_f = "c26"; break;
                    case NodeKind::Barge: dempty = 1.0; break;
                    case NodeKind::EDestination:
                        dropvar = drop(inst.node(V[j].node).ref, V[j].copy, p);
                        tag_e = "c27";
                        break;
                    default: break;
                }
                // yf_j - yf_i - dfull in [-M(1-x), M(1-x)]
                lp.row(tag_f + "a_" + ij, {{1.0, yf(j, p)}, {-1.0, yf(i, p)}, {load_m_full, xij}}, "<=",
                       dfull + load_m_full);
                lp.row(tag_f + "b_" + ij, {{1.0, yf(j, p)}, {-1.0, yf(i, p)}, {-load_m_full, xij}}, ">=",
                       dfull - load_m_full);
                std::vector<Term> e_terms{{1.0, ye(j, p)}, {-1.0, ye(i, p)}};
                if (!dropvar.empty()) {
                    e_terms.emplace_back(1.0, dropvar);
                }
                auto up = e_terms;
                up.emplace_back(load_m_empty, xij);
                lp.row(tag_e + "a_" + ij, up, "<=", dempty + load_m_empty);
                auto down = e_terms;
                down.emplace_back(-load_m_empty, xij);
                lp.row(tag_e + "b_" + ij, down, ">=", dempty - load_m_empty);
            }
        }
        // C29-C32.
        lp.row("c29" + sfx(p), {{1.0, ye(0, p)}}, "=", 0);
        lp.row("c30" + sfx(p), {{1.0, yf(0, p)}}, "=", 0);
        lp.row("c31" + sfx(p), {{1.0, ye(nv - 1, p)}}, "=", 0);
        lp.row("c32" + sfx(p), {{1.0, yf(nv - 1, p)}}, "=", 0);
    }

    // Bounds and integrality.
    std::size_t count = 0;
    for (int p = 0; p < P; ++p) {
        for (std::size_t i = 0; i < nv; ++i) {
            lp.bound(z(i, p), 0.0, horizon);
            lp.bound(st(i, p), 0.0, horizon);
            lp.bound(yf(i, p), 0.0, double(K));
            lp.bound(ye(i, p), 0.0, double(K));
            lp.general(yf(i, p));
            lp.general(ye(i, p));
            count += 4;
            if (i != 0 && i + 1 != nv) {
                lp.bound(ord(i, p), 0.0, double(inner));
                ++count;
            }
        }
        for (int h = 0; h < inst.e_count(); ++h) {
            for (int t = 1; t <= 2; ++t) {
                lp.bound(drop(h, t, p), 0.0, double(K));
                lp.bound(w(h, t, p), 0.0, double(K));
                lp.general(drop(h, t, p));
                lp.binary(u(h, t, p));
                count += 3;
            }
        }
    }
    for (int p = 0; p < P; ++p) {
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                if (has_arc(i, j)) {
                    lp.binary(x(i, j, p));
                    ++count;
                }
            }
        }
        for (int b = 0; b < inst.barge_count(); ++b) {
            for (int h = 0; h < inst.e_count(); ++h) {
                for (int t = 1; t <= 2; ++t) {
                    lp.binary(a(b, h, t, p));
                    ++count;
                }
            }
        }
    }
    return LpModel{lp.str(), count, lp.rows()};
}

}  // namespace tug
