#pragma once

#include "frobkit/invariants.hpp"

inline double extra(const frobkit::NumericReport& r, const std::string& key)
{
    for (auto& [k, v] : r.extra)
        if (k == key)
            return v;
    throw std::runtime_error("report has no entry " + key);
}
