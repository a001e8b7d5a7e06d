#include "oppm/orderctx.hpp"

#include <map>

namespace oppm {

DetOrderContext det_context(const IndetString& x) {
    if (!x.is_determinate())
        throw std::invalid_argument("det_context: string must be determinate");
    const std::size_t m = x.length();
    DetOrderContext ctx;
    ctx.leq.resize(m);
    ctx.lmax.resize(m);
    ctx.lmin.resize(m);

    std::map<Char, std::size_t> latest;  // character value -> latest earlier position
    for (std::size_t i = 0; i < m; ++i) {
        const Char v = x[i].min();
        auto it = latest.lower_bound(v);
        if (it != latest.end() && it->first == v) {
            ctx.leq[i] = it->second;
        } else {
            if (it != latest.begin()) ctx.lmax[i] = std::prev(it)->second;
            if (it != latest.end()) ctx.lmin[i] = it->second;
        }
        latest[v] = i;
    }
    return ctx;
}

IndetOrderContext indet_context(const IndetString& x) {
    if (x.empty()) throw std::invalid_argument("indet_context: empty string");
    const std::size_t m = x.length();
    IndetOrderContext ctx;
    ctx.leq.resize(m);
    ctx.lmax.resize(m);
    ctx.lmin.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = x[i].size();
        ctx.leq[i].resize(r);
        ctx.lmax[i].resize(r);
        ctx.lmin[i].resize(r);
        for (std::size_t j = 0; j < r; ++j) {
            const Char c = x[i][j];
            for (std::size_t k = 0; k < i; ++k) {
                if (x[k].contains(c)) ctx.leq[i][j].push_back(k);
                if (c > x[k].min()) ctx.lmax[i][j].push_back(k);
                if (c < x[k].max()) ctx.lmin[i][j].push_back(k);
            }
        }
    }
    return ctx;
}

}  // namespace oppm
