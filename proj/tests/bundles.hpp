#pragma once

// Bundles built once per process; the B3 build dominates test time.

#include <map>
#include <string>

#include "qgw/dbos.hpp"
#include "qgw/minpoly.hpp"
#include "qgw/rmatrix.hpp"

namespace qgw::testing_support {

inline const RMatrixBundle& bundle(const std::string& module, const std::string& variant = "default")
{
    static std::map<std::string, RMatrixBundle> cache;
    std::string key = module + "/" + variant;
    auto it = cache.find(key);
    if (it == cache.end()) {
        BuildOptions opts;
        opts.require_qybe = variant == "default";
        it = cache.emplace(key, build_rvv(builtin_module(module), builtin_roots(module, variant), opts)).first;
    }
    return it->second;
}

inline Rational target_length(const std::string& module)
{
    if (module == "b3-spin")
        return 1;
    if (module == "a1-spin32")
        return 6;
    return 2;
}

inline const MinPolyResult& generic_minpoly(const std::string& module)
{
    static std::map<std::string, MinPolyResult> cache;
    auto it = cache.find(module);
    if (it == cache.end()) {
        MinPolyResult r = minpoly_generic(braiding(bundle(module).r_paper));
        attach_roots(r);
        it = cache.emplace(module, r).first;
    }
    return it->second;
}

struct Stage {
    NormalizationData nd;
    RPrimePair rp;
    DBosReport rep;
};

inline const Stage& stage(const std::string& module)
{
    static std::map<std::string, Stage> cache;
    auto it = cache.find(module);
    if (it == cache.end()) {
        const RMatrixBundle& b = bundle(module);
        const MinPolyResult& mp = generic_minpoly(module);
        Stage s;
        s.nd = normalization_for(b, mp, target_length(module));
        s.rp = make_rprime(b, mp, s.nd.lambda);
        s.rep = cartan_extract(b, s.nd.lambda, b.module.dim, s.nd.target_root_length_sq);
        serre_chains(s.rep, b, s.rp);
        it = cache.emplace(module, std::move(s)).first;
    }
    return it->second;
}

}  // namespace qgw::testing_support
