#include "cavs/intervention.hpp"

#include <algorithm>

#include "cavs/errors.hpp"

namespace cavs {

ConditionalEstimate estimate_conditional(const Dataset& d, int y,
                                         const std::map<int, int>& given) {
    if (y < 0 || y >= d.var_count())
        throw ValidationError("unknown variable column " + std::to_string(y));
    for (const auto& [col, cat] : given) {
        if (col < 0 || col >= d.var_count())
            throw ValidationError("unknown variable column " + std::to_string(col));
        if (col == y)
            throw ValidationError("outcome variable '" + d.variable(y) +
                                  "' appears in the conditioning assignment");
        if (cat < 0 || cat >= static_cast<int>(d.alphabet(col).size()))
            throw ValidationError("unknown category for variable '" + d.variable(col) + "'");
    }

    ConditionalEstimate est;
    est.probabilities.assign(d.alphabet(y).size(), 0.0);
    std::vector<std::int64_t> counts(d.alphabet(y).size(), 0);
    for (std::int64_t r = 0; r < d.row_count(); ++r) {
        bool match = true;
        for (const auto& [col, cat] : given) {
            if (d.value(r, col) != cat) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        ++est.support;
        ++counts[static_cast<std::size_t>(d.value(r, y))];
    }
    if (est.support > 0)
        for (std::size_t i = 0; i < counts.size(); ++i)
            est.probabilities[i] =
                static_cast<double>(counts[i]) / static_cast<double>(est.support);
    return est;
}

InterventionResult do_effect(const Dataset& d, int x, int y,
                             const std::vector<int>& z,
                             const InterventionOptions& opts) {
    if (x < 0 || x >= d.var_count() || y < 0 || y >= d.var_count())
        throw ValidationError("unknown variable column");
    if (x == y) throw ValidationError("intervention and outcome variables must differ");
    if (d.row_count() < 1) throw ValidationError("intervention estimation needs data rows");

    std::vector<int> z_cols = z;
    std::sort(z_cols.begin(), z_cols.end());
    for (std::size_t i = 0; i < z_cols.size(); ++i) {
        int c = z_cols[i];
        if (c < 0 || c >= d.var_count())
            throw ValidationError("unknown variable column " + std::to_string(c));
        if (c == x || c == y)
            throw ValidationError("adjustment set contains '" + d.variable(c) + "'");
        if (i > 0 && z_cols[i] == z_cols[i - 1])
            throw ValidationError("duplicate adjustment variable '" + d.variable(c) + "'");
    }

    const std::int64_t n = d.row_count();
    const int x_card = static_cast<int>(d.alphabet(x).size());
    const int y_card = static_cast<int>(d.alphabet(y).size());

    // Strata over the full joint alphabet of z, last column fastest.
    std::vector<std::int64_t> strides(z_cols.size(), 1);
    std::int64_t n_strata = 1;
    for (std::size_t i = z_cols.size(); i-- > 0;) {
        strides[i] = n_strata;
        n_strata *= static_cast<std::int64_t>(d.alphabet(z_cols[i]).size());
        if (n_strata > (static_cast<std::int64_t>(1) << 16))
            throw ValidationError(
                "adjustment-set joint alphabet has more than 65536 strata");
    }

    InterventionResult res;
    res.x_name = d.variable(x);
    res.y_name = d.variable(y);
    res.x_alphabet = d.alphabet(x);
    res.y_alphabet = d.alphabet(y);
    for (int c : z_cols) res.z_names.push_back(d.variable(c));

    // One pass over the rows fills every count.
    std::vector<std::int64_t> x_total(static_cast<std::size_t>(x_card), 0);
    std::vector<std::vector<std::int64_t>> y_given_x(
        static_cast<std::size_t>(x_card),
        std::vector<std::int64_t>(static_cast<std::size_t>(y_card), 0));
    std::vector<std::int64_t> z_count(static_cast<std::size_t>(n_strata), 0);
    std::vector<std::vector<std::int64_t>> xz_count(
        static_cast<std::size_t>(n_strata),
        std::vector<std::int64_t>(static_cast<std::size_t>(x_card), 0));
    // [stratum][x][y]
    std::vector<std::vector<std::vector<std::int64_t>>> xyz_count(
        static_cast<std::size_t>(n_strata),
        std::vector<std::vector<std::int64_t>>(
            static_cast<std::size_t>(x_card),
            std::vector<std::int64_t>(static_cast<std::size_t>(y_card), 0)));

    for (std::int64_t r = 0; r < n; ++r) {
        int xv = d.value(r, x);
        int yv = d.value(r, y);
        std::int64_t s = 0;
        for (std::size_t j = 0; j < z_cols.size(); ++j)
            s += strides[j] * d.value(r, z_cols[j]);
        ++x_total[static_cast<std::size_t>(xv)];
        ++y_given_x[static_cast<std::size_t>(xv)][static_cast<std::size_t>(yv)];
        ++z_count[static_cast<std::size_t>(s)];
        ++xz_count[static_cast<std::size_t>(s)][static_cast<std::size_t>(xv)];
        ++xyz_count[static_cast<std::size_t>(s)][static_cast<std::size_t>(xv)]
                   [static_cast<std::size_t>(yv)];
    }

    for (int j = 0; j < x_card; ++j)
        if (x_total[static_cast<std::size_t>(j)] == 0)
            throw UnestimableInterventionError(
                "category '" + res.x_alphabet[static_cast<std::size_t>(j)] +
                "' of variable '" + res.x_name + "' never occurs in the data");

    res.strata.resize(static_cast<std::size_t>(n_strata));
    {
        std::vector<int> state(z_cols.size(), 0);
        for (std::int64_t s = 0; s < n_strata; ++s) {
            StratumInfo& info = res.strata[static_cast<std::size_t>(s)];
            info.z_state = state;
            info.count = z_count[static_cast<std::size_t>(s)];
            info.weight = static_cast<double>(info.count) / static_cast<double>(n);
            info.count_per_x = xz_count[static_cast<std::size_t>(s)];
            for (std::size_t j = z_cols.size(); j-- > 0;) {
                if (++state[j] < static_cast<int>(d.alphabet(z_cols[j]).size())) break;
                state[j] = 0;
            }
        }
    }

    res.per_x.assign(static_cast<std::size_t>(x_card),
                     std::vector<double>(static_cast<std::size_t>(y_card), 0.0));
    const double alpha = opts.laplace_alpha;
    for (int j = 0; j < x_card; ++j) {
        auto& acc = res.per_x[static_cast<std::size_t>(j)];
        for (std::int64_t s = 0; s < n_strata; ++s) {
            const StratumInfo& info = res.strata[static_cast<std::size_t>(s)];
            if (info.count == 0) continue;  // zero weight, the term vanishes
            std::int64_t support = info.count_per_x[static_cast<std::size_t>(j)];
            if (support < opts.sparse_warn_threshold)
                res.sparse.push_back({j, static_cast<std::size_t>(s), support});
            std::vector<double> cond(static_cast<std::size_t>(y_card), 0.0);
            if (alpha > 0.0) {
                double denom = static_cast<double>(support) + alpha * y_card;
                for (int yv = 0; yv < y_card; ++yv)
                    cond[static_cast<std::size_t>(yv)] =
                        (static_cast<double>(
                             xyz_count[static_cast<std::size_t>(s)]
                                      [static_cast<std::size_t>(j)]
                                      [static_cast<std::size_t>(yv)]) +
                         alpha) /
                        denom;
            } else if (support > 0) {
                for (int yv = 0; yv < y_card; ++yv)
                    cond[static_cast<std::size_t>(yv)] =
                        static_cast<double>(xyz_count[static_cast<std::size_t>(s)]
                                                     [static_cast<std::size_t>(j)]
                                                     [static_cast<std::size_t>(yv)]) /
                        static_cast<double>(support);
            } else {
                if (opts.zero_support == InterventionOptions::ZeroSupport::error)
                    throw ValidationError(
                        "stratum with no samples for '" + res.x_name + "' = '" +
                        res.x_alphabet[static_cast<std::size_t>(j)] +
                        "' (strict zero-support mode)");
                // Fall back to the z-marginal conditional P(Y | X = x_j).
                for (int yv = 0; yv < y_card; ++yv)
                    cond[static_cast<std::size_t>(yv)] =
                        static_cast<double>(y_given_x[static_cast<std::size_t>(j)]
                                                     [static_cast<std::size_t>(yv)]) /
                        static_cast<double>(x_total[static_cast<std::size_t>(j)]);
                res.fallbacks.push_back({j, static_cast<std::size_t>(s)});
            }
            for (int yv = 0; yv < y_card; ++yv)
                acc[static_cast<std::size_t>(yv)] +=
                    info.weight * cond[static_cast<std::size_t>(yv)];
        }
    }
    return res;
}

double average_causal_effect(const InterventionResult& r, int x0, int x1,
                             int y_target) {
    auto check_x = [&](int c) {
        if (c < 0 || c >= static_cast<int>(r.x_alphabet.size()))
            throw ValidationError("unknown category index " + std::to_string(c) +
                                  " for variable '" + r.x_name + "'");
    };
    check_x(x0);
    check_x(x1);
    if (y_target < 0 || y_target >= static_cast<int>(r.y_alphabet.size()))
        throw ValidationError("unknown category index " + std::to_string(y_target) +
                              " for variable '" + r.y_name + "'");
    return r.per_x[static_cast<std::size_t>(x1)][static_cast<std::size_t>(y_target)] -
           r.per_x[static_cast<std::size_t>(x0)][static_cast<std::size_t>(y_target)];
}

}  // namespace cavs
