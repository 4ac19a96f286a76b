#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace asmell {

/// Iterative Tarjan. Components come out in reverse topological order of the
/// condensation (a component precedes every component that can reach it);
/// members of each component are sorted ascending.
template <class Successors>
std::vector<std::vector<std::uint32_t>> tarjan_scc(std::uint32_t n, Successors&& successors) {
    constexpr std::uint32_t unvisited = UINT32_MAX;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> components;
    std::uint32_t counter = 0;

    struct Frame {
        std::uint32_t node;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& frame = call.back();
            const auto& succ = successors(frame.node);
            if (frame.next < static_cast<std::size_t>(std::size(succ))) {
                const std::uint32_t w = static_cast<std::uint32_t>(*(std::begin(succ) + frame.next));
                ++frame.next;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[frame.node] = std::min(low[frame.node], index[w]);
                }
                continue;
            }
            const std::uint32_t v = frame.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> component;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
        }
    }
    return components;
}

}  // namespace asmell
