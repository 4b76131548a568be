// schema.hpp — which observable is read out at which time

#pragma once

#include "qthermo/types.hpp"

namespace qthermo {

// Ordered (time, observable) pairs; the order is the feature order of every
// vector produced under this schema.
struct FeatureSchema {
    struct Entry {
        double time{0.0};
        ObservableId observable{ObservableId::SigmaZ};
    };

    std::vector<Entry> entries;

    int size() const { return static_cast<int>(entries.size()); }

    void validate() const {
        if (entries.empty()) throw std::invalid_argument("FeatureSchema: empty schema");
        for (const auto& e : entries)
            if (e.time < 0.0) throw std::invalid_argument("FeatureSchema: negative time");
    }

    // First n entries, in order.
    FeatureSchema prefix(int n) const {
        if (n < 1 || n > size()) throw std::out_of_range("FeatureSchema::prefix: bad length");
        return FeatureSchema{{entries.begin(), entries.begin() + n}};
    }

    static FeatureSchema single_observable(const std::vector<double>& times, ObservableId obs) {
        FeatureSchema s;
        s.entries.reserve(times.size());
        for (double t : times) s.entries.push_back({t, obs});
        return s;
    }
};

// The observation times used throughout the figure reproductions.
inline std::vector<double> canonical_times() {
    return {1.6, 2.5, 4.0, 6.7, 10.4, 16.7, 26.7};
}

}  // namespace qthermo
