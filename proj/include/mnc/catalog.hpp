#pragma once

// A fixed list of measures covering every kind and tier, used by sweeps.

#include "mnc/mnc.hpp"
#include "mnc/phi.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mnc {

struct CatalogEntry {
    std::string name;
    Mnc measure;
};

/// Measures on k blocks. Weight vectors cycle through a fixed pattern so the
/// list is defined for every k >= 1.
inline std::vector<CatalogEntry> catalog(std::size_t k) {
    auto pattern = [k](std::vector<double> base) {
        std::vector<double> w(k);
        for (std::size_t j = 0; j < k; ++j)
            w[j] = base[j % base.size()];
        return w;
    };
    std::vector<std::vector<double>> f{pattern({1.0, 0.5, 0.0}), pattern({0.0, 1.0, 1.0}),
                                       pattern({0.25, 0.25, 2.0})};
    for (std::size_t j = 0; j < k; ++j)
        f[0][j] = f[0][j] == 0.0 && f[1][j] == 0.0 && f[2][j] == 0.0 ? 1.0 : f[0][j];

    const Phi linf = Phi::norm(NormOrder::inf);
    const Phi l2 = Phi::norm(NormOrder::two);
    const Phi lin = Phi::linear(pattern({1.0, 2.0, 0.5}));

    std::vector<CatalogEntry> out;
    out.push_back({"beta", make_mnc(MncSpec::hausdorff())});
    out.push_back({"sum", make_mnc(MncSpec::sum())});
    out.push_back({"weighted_sup", make_mnc(MncSpec::weighted_sup(f))});
    out.push_back({"l1", make_mnc(MncSpec::convex_of_radii(Phi::norm(NormOrder::one)))});
    out.push_back({"l2", make_mnc(MncSpec::convex_of_radii(l2))});
    out.push_back({"linear", make_mnc(MncSpec::convex_of_radii(lin))});
    out.push_back({"beta_squared", make_mnc(MncSpec::convex_of_radii(Phi::power(linf, 2.0)))});
    out.push_back({"beta_plus_l2_cubed",
                   make_mnc(MncSpec::convex_of_radii(Phi::sum({1.0, 0.5}, {linf, Phi::power(l2, 3.0)})))});
    out.push_back({"max_linear_l2", make_mnc(MncSpec::convex_of_radii(Phi::max({lin, l2})))});
    return out;
}

} // namespace mnc
