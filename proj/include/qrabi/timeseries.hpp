#pragma once

#include <string>
#include <vector>

namespace qrabi {

// Uniform output currency: a time grid plus named channels of equal length.
struct TimeSeries {
    std::vector<double> t;
    std::vector<std::pair<std::string, std::vector<double>>> channels;

    std::vector<double>& add_channel(const std::string& name) {
        channels.emplace_back(name, std::vector<double>(t.size(), 0.0));
        return channels.back().second;
    }

    const std::vector<double>* channel(const std::string& name) const {
        for (const auto& [key, values] : channels) {
            if (key == name) return &values;
        }
        return nullptr;
    }
};

} // namespace qrabi
