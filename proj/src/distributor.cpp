#include "taintchain/distributor.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_map>

namespace taintchain {

Assignment RoundRobinDistributor::assign(const std::vector<Transaction>& queue,
                                         size_t workers) const {
    assert(workers >= 1 && workers <= kMaxWorkers);
    Assignment a;
    a.worker_of.resize(queue.size());
    for (size_t i = 0; i < queue.size(); ++i) a.worker_of[i] = ThreadId(i % workers);
    return a;
}

namespace {

struct UnionFind {
    std::vector<size_t> parent;

    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    size_t find(size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<size_t> hint_components(const std::vector<Transaction>& queue) {
    UnionFind uf(queue.size());
    // Two transactions sharing any hinted key are connected; linking each
    // transaction to the first toucher of every key is equivalent to the
    // bipartite construction.
    std::unordered_map<StateKey, size_t, StateKeyHash> first_toucher;
    for (size_t i = 0; i < queue.size(); ++i) {
        for (const StateKey& key : access_hints(queue[i])) {
            auto [it, inserted] = first_toucher.try_emplace(key, i);
            if (!inserted) uf.unite(i, it->second);
        }
    }

    std::vector<size_t> component(queue.size());
    std::unordered_map<size_t, size_t> relabel;
    for (size_t i = 0; i < queue.size(); ++i) {
        size_t root = uf.find(i);
        auto [it, inserted] = relabel.try_emplace(root, relabel.size());
        component[i] = it->second;
    }
    return component;
}

size_t largest_component_size(const std::vector<Transaction>& queue) {
    std::vector<size_t> component = hint_components(queue);
    std::unordered_map<size_t, size_t> sizes;
    size_t best = 0;
    for (size_t c : component) best = std::max(best, ++sizes[c]);
    return best;
}

Assignment ConnectedComponentsDistributor::assign(const std::vector<Transaction>& queue,
                                                  size_t workers) const {
    assert(workers >= 1 && workers <= kMaxWorkers);
    std::vector<size_t> component = hint_components(queue);

    size_t n_components = 0;
    for (size_t c : component) n_components = std::max(n_components, c + 1);

    struct Comp {
        size_t size = 0;
        uint64_t min_tx_id = ~uint64_t{0};
        size_t idx = 0;
    };
    std::vector<Comp> comps(n_components);
    for (size_t i = 0; i < queue.size(); ++i) {
        Comp& c = comps[component[i]];
        c.size++;
        c.min_tx_id = std::min(c.min_tx_id, queue[i].id);
        c.idx = component[i];
    }

    // LPT-style greedy: biggest component first onto the least-loaded worker.
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.min_tx_id < b.min_tx_id;
    });

    std::vector<size_t> load(workers, 0);
    std::vector<ThreadId> worker_of_component(n_components);
    for (const Comp& c : comps) {
        size_t target = 0;
        for (size_t w = 1; w < workers; ++w) {
            if (load[w] < load[target]) target = w;
        }
        worker_of_component[c.idx] = ThreadId(target);
        load[target] += c.size;
    }

    Assignment a;
    a.worker_of.resize(queue.size());
    for (size_t i = 0; i < queue.size(); ++i) a.worker_of[i] = worker_of_component[component[i]];
    return a;
}

}  // namespace taintchain
