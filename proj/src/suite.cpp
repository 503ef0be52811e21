#include "bloch/suite.hpp"

#include "bloch/certifier.hpp"
#include "bloch/config_complex.hpp"
#include "bloch/milnor.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

namespace bloch {

using nlohmann::json;

std::vector<TowerElement> positive_samples(SplitMix64& rng, int count) {
    std::vector<TowerElement> out;
    static const long long radicands[] = {2, 3, 5, 6};
    for (int i = 0; i < count; ++i) {
        if (i % 10 == 4) {
            // an irrational positive sample: k + sqrt(r)
            auto r = sqrt_positive(TowerElement(Rat(radicands[rng.below(4)])));
            out.push_back(TowerElement(Rat(1 + (long long)rng.below(3)), r.context) + r.root);
        } else {
            Rat v(1 + (long long)rng.below(9), 1 + (long long)rng.below(9));
            if (v == 1) v += 1;
            out.push_back(TowerElement(v));
        }
    }
    return out;
}

std::vector<TowerElement> negative_samples(SplitMix64& rng, int count) {
    std::vector<TowerElement> out;
    for (auto& v : positive_samples(rng, count)) out.push_back(-v);
    return out;
}

namespace {

struct ItemContext {
    const RunConfig& config;
    SplitMix64 rng;
};

using ItemFn = std::function<SuiteEntry(ItemContext&)>;

SuiteEntry checked_item(const std::string& label, ItemContext&,
                        const std::function<bool(std::string&)>& body) {
    SuiteEntry e;
    e.label = label;
    std::string detail;
    try {
        e.status = body(detail) ? "CHECKED" : "REFUTED";
    } catch (const Error& err) {
        e.status = "REFUTED";
        detail = err.what();
    }
    e.detail = detail;
    return e;
}

SuiteEntry proved_item(const std::string& label, ItemContext&,
                       const std::function<void(std::vector<std::string>&)>& body) {
    SuiteEntry e;
    e.label = label;
    try {
        body(e.certificates);
        e.status = "PROVED";
    } catch (const Error& err) {
        e.status = "NOT_FOUND";
        e.detail = err.what();
    }
    return e;
}

TowerElement q(long long n, long long d = 1) { return TowerElement(Rat(n, d)); }

std::pair<Rat, Rat> distinct_pair(SplitMix64& rng) {
    while (true) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a != b) return {a, b};
    }
}

SuiteEntry item_group_ring(ItemContext& cx) {
    return checked_item("1.1 group ring and augmentation ideal", cx, [&](std::string&) {
        for (int i = 0; i < cx.config.samples; ++i) {
            Rat a = cx.rng.rational(), b = cx.rng.rational();
            GroupRing ba = bracket(square_class(a)), bb = bracket(square_class(b));
            if (epsilon(ba) != 0 || epsilon(ba * bb) != 0) return false;
            if (bracket(square_class(a * b)) != ba + bb + ba * bb) return false;
            if (ba * ba != ba.scaled(Int(-2))) return false;
            if (!in_aug_ideal_squared(ba * bb)) return false;
        }
        return true;
    });
}

SuiteEntry item_quadratic_closure(ItemContext& cx) {
    return checked_item("2 quadratic closure and 2-divisibility", cx, [&](std::string&) {
        for (int i = 0; i < cx.config.samples; ++i) {
            TowerElement x = cx.rng.nonzero_tower_element(1 + int(cx.rng.below(2)), 6);
            SquareClass c = square_class(x, Backend::tower);
            if (c != kClassOne && c != kClassMinusOne) return false;
            TowerElement y = cx.rng.element_in(x.context(), 6);
            if (y.is_zero()) continue;
            if (square_class(x * y, Backend::tower) != c * square_class(y, Backend::tower))
                return false;
            if (i % 4 == 0 && !verify_halving(halve_wedge(x, y), x, y)) return false;
        }
        return true;
    });
}

SuiteEntry item_lambda_classical(ItemContext& cx) {
    return checked_item("3.1 classical relations in the kernel of lambda", cx, [&](std::string&) {
        for (int i = 0; i < cx.config.samples; ++i) {
            auto [a, b] = distinct_pair(cx.rng);
            PElement rel = r_relation(TowerElement(a), TowerElement(b));
            std::vector<Rat> vals;
            for (const auto& s : rel.support()) {
                vals.push_back(s.rational_value());
                vals.push_back(1 - s.rational_value());
            }
            if (!lambda2(rel, MultiplicativeBasis::rational_for(vals)).is_zero()) return false;
        }
        return true;
    });
}

SuiteEntry item_lambda_refined(ItemContext& cx) {
    return checked_item("3.2 refined relations in the kernel of Lambda", cx, [&](std::string&) {
        for (int i = 0; i < cx.config.samples; ++i) {
            auto [a, b] = distinct_pair(cx.rng);
            RPElement srel = s_relation(TowerElement(a), TowerElement(b), Backend::rational);
            if (!lambda1(srel, Backend::rational).is_zero()) return false;
            PElement rel = coinvariants(srel);
            std::vector<Rat> vals;
            for (const auto& s : rel.support()) {
                vals.push_back(s.rational_value());
                vals.push_back(1 - s.rational_value());
            }
            if (!lambda2(rel, MultiplicativeBasis::rational_for(vals)).is_zero()) return false;

            TowerElement x = cx.rng.nonzero_tower_element(1, 5);
            TowerElement y = cx.rng.element_in(x.context(), 5);
            TowerElement one(Rat(1), x.context());
            if (y.is_zero() || y == one || x == one || x == y) continue;
            if (!lambda1(s_relation(x, y, Backend::tower), Backend::tower).is_zero()) return false;
        }
        return true;
    });
}

SuiteEntry item_psi_identities(ItemContext& cx) {
    return proved_item("3.3 psi identities certified", cx, [&](std::vector<std::string>& refs) {
        Backend backend = cx.config.backend;
        const std::pair<long long, long long> args[] = {{2, 3}, {2, 2}, {-1, 2}};
        for (int i = 1; i <= 2; ++i) {
            for (auto [a, b] : args) {
                refs.push_back(tactic_psi_additivity(i, q(a), q(b), backend).claim.label);
                refs.push_back(tactic_psi_swap(i, q(a), q(b), backend).claim.label);
                refs.push_back(tactic_psi_square(i, q(a), backend).claim.label);
                refs.push_back(tactic_psi_double_square(i, q(a), backend).claim.label);
            }
            refs.push_back(tactic_psi_order2(i, backend).claim.label);
        }
    });
}

SuiteEntry item_canonical_element(ItemContext& cx) {
    return proved_item("3.4 canonical element certified", cx, [&](std::vector<std::string>& refs) {
        Backend backend = cx.config.backend;
        refs.push_back(tactic_c_constant(q(2), q(3), backend).claim.label);
        refs.push_back(tactic_c_constant(q(2), q(-1), backend).claim.label);
        refs.push_back(tactic_c_symmetric(q(-1), backend).claim.label);
        refs.push_back(tactic_c_symmetric(q(2), backend).claim.label);
        // Lambda vanishes on the canonical element
        RPElement c = c_element(q(2), backend);
        if (!lambda1(c, backend).is_zero()) throw Error("lambda1 does not vanish on C");
        PElement p = coinvariants(c);
        std::vector<Rat> vals;
        for (const auto& s : p.support()) {
            vals.push_back(s.rational_value());
            vals.push_back(1 - s.rational_value());
        }
        if (!lambda2(p, MultiplicativeBasis::rational_for(vals)).is_zero())
            throw Error("lambda2 does not vanish on C");
    });
}

SuiteEntry item_tower_certificates(ItemContext& cx) {
    if (cx.config.backend != Backend::tower) {
        SuiteEntry e;
        e.label = "4 tower: psi vanishing and trivial action certified";
        e.status = "SKIPPED";
        e.detail = "requires the tower backend";
        return e;
    }
    return proved_item("4 tower: psi vanishing and trivial action certified", cx,
                       [&](std::vector<std::string>& refs) {
        auto pos = positive_samples(cx.rng, cx.config.samples);
        auto neg = negative_samples(cx.rng, cx.config.samples);
        for (const auto& x : pos) {
            refs.push_back(tactic_psi_vanish_positive(1, x).claim.label);
            refs.push_back(tactic_psi_vanish_positive(2, x).claim.label);
            refs.push_back(tactic_trivial_action(x).claim.label);
        }
        for (const auto& x : neg) refs.push_back(tactic_trivial_action(x).claim.label);
        // lambda1 is identically zero over the tower
        for (int i = 0; i < cx.config.samples; ++i) {
            TowerElement x = cx.rng.nonzero_tower_element(1, 6);
            TowerElement one(Rat(1), x.context());
            if (x == one) continue;
            if (!lambda1(RPElement::generator(x), Backend::tower).is_zero())
                throw Error("lambda1 nonzero over the tower");
        }
    });
}

SuiteEntry item_configurations(ItemContext& cx) {
    return checked_item("5.1 configuration complex matches lambda1", cx, [&](std::string&) {
        SL2Matrix g = SL2Matrix::identity();
        for (int i = 0; i < cx.config.samples; ++i) {
            // random tuple, random SL2 element, invariance of the canonical form
            std::vector<ProjPoint> pts;
            while (pts.size() < 4) {
                ProjPoint p = cx.rng.below(8) == 0 ? ProjPoint::infinity()
                                                   : ProjPoint::finite(TowerElement(cx.rng.rational(9)));
                bool dup = false;
                for (const auto& o : pts) dup = dup || o == p;
                if (!dup) pts.push_back(p);
            }
            ConfigTuple t(pts);
            TowerElement v(cx.rng.rational(6));
            TowerElement zero(Rat(0)), one(Rat(1));
            g = g * (cx.rng.below(2) ? SL2Matrix(one, v, zero, one) : SL2Matrix(one, zero, v, one));
            auto a = canonicalize(t, cx.config.backend);
            auto b = canonicalize(apply(g, t), cx.config.backend);
            if (a.cls != b.cls || a.tuple.size() != b.tuple.size()) return false;
            for (size_t k = 0; k < a.tuple.size(); ++k)
                if (a.tuple.entries[k] != b.tuple.entries[k]) return false;
            if (!boundary(boundary(t)).is_zero()) return false;

            Rat z = cx.rng.rational_excluding_01();
            GroupRing d = induced_d1(RFModuleElement::term(ZTuple({TowerElement(z)})),
                                     Backend::rational)
                              .scalar();
            if (d != lambda1(RPElement::generator(TowerElement(z)), Backend::rational)
                         .scaled(Int(kInducedD1Sign)))
                return false;
        }
        GroupRing worked = induced_d1(RFModuleElement::term(ZTuple({q(2)})), Backend::rational)
                               .scalar();
        GroupRing expect = GroupRing::of_class(kClassMinusOne) -
                           GroupRing::of_class(square_class(Rat(-2))) +
                           GroupRing::of_class(square_class(Rat(2))) - GroupRing::one();
        return worked == expect;
    });
}

SuiteEntry item_milnor(ItemContext& cx) {
    return checked_item("6 milnor decomposition", cx, [&](std::string&) {
        for (int i = 0; i < cx.config.samples; ++i) {
            Rat a = cx.rng.rational_excluding_01();
            MilnorSymbol st({TowerElement(a), TowerElement(Rat(1) - a)});
            if (!steinberg_trivial(st)) return false;
            if (mod2_reduce(st) != Mod2NormalForm::ZERO) return false;

            std::vector<TowerElement> es;
            bool any_positive = false;
            for (int k = 0; k < 2; ++k) {
                Rat v = cx.rng.rational();
                any_positive = any_positive || v > 0;
                es.push_back(TowerElement(v));
            }
            MilnorSymbol s(es);
            if (mod2_reduce(s) !=
                (any_positive ? Mod2NormalForm::ZERO : Mod2NormalForm::MINUS_ONES))
                return false;
        }
        KMElement h = halve_positive_symbol(MilnorSymbol({q(2), q(3)}));
        auto first = h.terms().at(0).first.entries[0];
        MultiplicativeBasis basis(Backend::tower, {first, q(3).promote_to(first.context())});
        KMElement s23 = KMElement::term(
            MilnorSymbol({q(2).promote_to(first.context()), q(3).promote_to(first.context())}));
        return expand_tensor(h.scaled(Int(2)), basis) == expand_tensor(s23, basis);
    });
}

}  // namespace

bool SuiteReport::ok() const {
    for (const auto& e : entries)
        if (e.status == "REFUTED" || e.status == "NOT_FOUND") return false;
    return true;
}

SuiteReport run_suite(const RunConfig& config) {
    std::vector<ItemFn> items = {item_group_ring,      item_quadratic_closure,
                                 item_lambda_classical, item_lambda_refined,
                                 item_psi_identities,   item_canonical_element,
                                 item_tower_certificates, item_configurations,
                                 item_milnor};
    std::vector<SuiteEntry> results(items.size());
    std::atomic<size_t> next{0};
    unsigned n = config.workers > 0 ? unsigned(config.workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, items.size());
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            ItemContext cx{config, SplitMix64(config.seed * 0x100000001b3ULL + i)};
            auto t0 = std::chrono::steady_clock::now();
            results[i] = items[i](cx);
            results[i].elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
        }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < n; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    SuiteReport report{config, std::move(results)};
    std::sort(report.entries.begin(), report.entries.end(),
              [](const SuiteEntry& a, const SuiteEntry& b) { return a.label < b.label; });
    return report;
}

json report_to_json(const SuiteReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json refs = json::array();
        for (const auto& r : e.certificates) refs.push_back(r);
        entries.push_back(json{{"label", e.label},
                               {"status", e.status},
                               {"certificates", std::move(refs)},
                               {"detail", e.detail}});
    }
    return json{{"version", 1},
                {"backend", report.config.backend == Backend::rational ? "rational" : "tower"},
                {"seed", report.config.seed},
                {"samples", report.config.samples},
                {"pool_depth", report.config.pool_depth},
                {"tower_depth", report.config.tower_depth},
                {"entries", std::move(entries)}};
}

std::string report_to_text(const SuiteReport& report) {
    std::ostringstream out;
    for (const auto& e : report.entries) {
        out << e.label << ": " << e.status << "  (" << e.elapsed_ms << " ms";
        if (!e.certificates.empty()) out << ", " << e.certificates.size() << " certificates";
        out << ")";
        if (!e.detail.empty()) out << "  -- " << e.detail;
        out << "\n";
    }
    out << (report.ok() ? "suite: all green" : "suite: FAILURES") << "\n";
    return out.str();
}

}  // namespace bloch
