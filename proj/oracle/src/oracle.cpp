#include "tgit/oracle/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace tgit::oracle {

namespace {

using Vec = std::vector<long long>;

Vec to_ll(const IntVector& v) {
    Vec out;
    for (const auto& x : v) out.push_back(x.convert_to<long long>());
    return out;
}

long long dot(const Vec& a, const Vec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Calls visit(x) for every x in [-box, box]^n until it returns true.
bool walk_box(std::size_t n, long long box, const std::function<bool(const Vec&)>& visit) {
    Vec x(n, -box);
    for (;;) {
        if (visit(x)) return true;
        std::size_t k = 0;
        while (k < n && x[k] == box) x[k] = -box, ++k;
        if (k == n) return false;
        ++x[k];
    }
}

// Rank over Q by fraction-free elimination.
std::size_t rank_of(std::vector<std::vector<Integer>> rows, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            const Integer f = rows[i][c], g = rows[r][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] * g - rows[r][j] * f;
        }
        ++r;
    }
    return r;
}

struct Data {
    std::size_t n = 0;
    std::vector<Vec> rays;
    std::vector<Face> faces;
    std::vector<Vec> weight_rows;
    std::vector<Vec> divisors;
    std::vector<Vec> shifts;  // one per divisor, length d
    std::size_t d = 0;

    explicit Data(const Instance& in) : n(in.lattice_rank), faces(in.faces), d(in.weight_rows.size()) {
        for (const auto& r : in.rays) rays.push_back(to_ll(r));
        for (const auto& w : in.weight_rows) weight_rows.push_back(to_ll(w));
        for (const auto& a : in.divisors) divisors.push_back(to_ll(a));
        for (std::size_t i = 0; i < divisors.size(); ++i)
            shifts.push_back(i < in.shifts.size() ? to_ll(in.shifts[i]) : Vec(d, 0));
        for (auto& f : faces) std::sort(f.begin(), f.end());
    }

    // Coefficients of sum m_i D_i.
    Vec degree_divisor(const Vec& m) const {
        Vec a(rays.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t rho = 0; rho < rays.size(); ++rho) a[rho] += m[i] * divisors[i][rho];
        return a;
    }

    bool invariant(const Vec& u, const Vec& m) const {
        for (std::size_t r = 0; r < d; ++r) {
            long long w = dot(weight_rows[r], u);
            for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * shifts[i][r];
            if (w != 0) return false;
        }
        return true;
    }

    // X \ Z(f) for a section vanishing exactly off `zero_free`: the union of
    // the cones with rays in that set; affine iff one of them contains the rest.
    std::optional<Face> affine_chart(const Face& zero_free) const {
        std::optional<Face> top;
        std::vector<const Face*> inside;
        for (const auto& f : faces)
            if (std::includes(zero_free.begin(), zero_free.end(), f.begin(), f.end())) inside.push_back(&f);
        for (const Face* c : inside)
            if (std::all_of(inside.begin(), inside.end(), [&](const Face* g) {
                    return std::includes(c->begin(), c->end(), g->begin(), g->end());
                }))
                top = *c;
        if (!top || *top != zero_free) return std::nullopt;
        return top;
    }

    bool cartier_on(const Face& chart, const Vec& a, long long box) const {
        return walk_box(n, box, [&](const Vec& m) {
            return std::all_of(chart.begin(), chart.end(), [&](std::size_t rho) { return dot(m, rays[rho]) == -a[rho]; });
        });
    }
};

}  // namespace

Locus enumerate_witnesses(const Instance& instance, const SearchBounds& bounds) {
    const Data data(instance);
    const std::size_t k = data.divisors.size();
    std::map<Face, bool> cartier;
    std::map<Face, bool> finite_index;

    auto chart_ok = [&](const Face& chart) {
        auto it = cartier.find(chart);
        if (it == cartier.end()) {
            bool ok = true;
            for (const auto& a : data.divisors) ok = ok && data.cartier_on(chart, a, bounds.box);
            it = cartier.emplace(chart, ok).first;
        }
        if (!it->second || !instance.group) return it->second;
        auto jt = finite_index.find(chart);
        if (jt == finite_index.end()) {
            // Degrees carrying an invertible invariant section on the chart.
            std::vector<std::vector<Integer>> degrees;
            walk_box(k, bounds.degree_box, [&](const Vec& m) {
                const Vec a = data.degree_divisor(m);
                const bool found = walk_box(data.n, bounds.box, [&](const Vec& u) {
                    if (!data.invariant(u, m)) return false;
                    return std::all_of(chart.begin(), chart.end(),
                                       [&](std::size_t rho) { return dot(u, data.rays[rho]) + a[rho] == 0; });
                });
                if (found) degrees.emplace_back(m.begin(), m.end());
                return false;
            });
            jt = finite_index.emplace(chart, rank_of(degrees, k) == k).first;
        }
        return jt->second;
    };

    Locus out;
    auto consider = [&](const Vec& m) {
        const Vec a = data.degree_divisor(m);
        walk_box(data.n, bounds.box, [&](const Vec& u) {
            if (!data.invariant(u, m)) return false;
            Face zero_free;
            for (std::size_t rho = 0; rho < data.rays.size(); ++rho) {
                const long long b = dot(u, data.rays[rho]) + a[rho];
                if (b < 0) return false;
                if (b == 0) zero_free.push_back(rho);
            }
            const auto chart = data.affine_chart(zero_free);
            if (!chart || out.witnesses.count(*chart) || !chart_ok(*chart)) return false;
            out.witnesses.emplace(*chart, Witness{*chart, m, {u}});
            return false;
        });
    };
    if (instance.group) {
        walk_box(k, bounds.degree_box, [&](const Vec& m) {
            consider(m);
            return false;
        });
    } else {
        for (long long deg = 1; deg <= bounds.n_max; ++deg) consider(Vec(k, deg));
    }

    for (const auto& [chart, w] : out.witnesses)
        for (const auto& f : data.faces)
            if (std::includes(chart.begin(), chart.end(), f.begin(), f.end())) out.faces.insert(f);
    return out;
}

std::vector<Sample> sample_chambers(const Instance& instance, long long resolution, const SearchBounds& bounds) {
    Instance trivial = instance;
    trivial.divisors = {zero_vector(instance.rays.size())};
    trivial.group = false;
    const std::size_t d = instance.weight_rows.size();
    std::vector<Sample> out;
    walk_box(d, resolution, [&](const Vec& chi) {
        IntVector shift;
        for (long long c : chi) shift.emplace_back(-c);
        trivial.shifts = {shift};
        out.push_back({chi, enumerate_witnesses(trivial, bounds).faces});
        return false;
    });
    return out;
}

}  // namespace tgit::oracle
