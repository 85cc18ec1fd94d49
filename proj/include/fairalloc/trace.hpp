#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairalloc/instance.hpp"

namespace fairalloc {

enum class TraceEventKind { AddEdge, AttachBlockers, Swap, RootMatched, PartialCollapse, Stalled };

inline const char* trace_event_name(TraceEventKind k) {
    switch (k) {
        case TraceEventKind::AddEdge: return "add_edge";
        case TraceEventKind::AttachBlockers: return "attach_blockers";
        case TraceEventKind::Swap: return "swap";
        case TraceEventKind::RootMatched: return "root_matched";
        case TraceEventKind::PartialCollapse: return "partial_collapse";
        case TraceEventKind::Stalled: return "stalled";
    }
    return "?";
}

struct TraceEvent {
    TraceEventKind kind;
    int distance = 0;
    int player = -1;
    std::vector<int> bundle;
    std::vector<std::int64_t> signature;
};

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void emit(const TraceEvent& ev) = 0;
};

class VectorTraceSink : public TraceSink {
public:
    void emit(const TraceEvent& ev) override { events.push_back(ev); }
    std::vector<TraceEvent> events;
};

inline nlohmann::json trace_event_to_json(const Instance& inst, const TraceEvent& ev) {
    nlohmann::json bundle = nlohmann::json::array();
    for (int r : ev.bundle) bundle.push_back(inst.resource_names()[r]);
    return nlohmann::json{{"event", trace_event_name(ev.kind)},
                          {"distance", ev.distance},
                          {"player", ev.player >= 0 ? inst.player_names()[ev.player] : ""},
                          {"bundle", std::move(bundle)},
                          {"signature", ev.signature}};
}

// JSON Lines, one event per line.
class JsonlTraceSink : public TraceSink {
public:
    JsonlTraceSink(std::ostream& out, const Instance& inst) : out_(out), inst_(inst) {}
    void emit(const TraceEvent& ev) override {
        out_ << trace_event_to_json(inst_, ev).dump() << "\n";
    }

private:
    std::ostream& out_;
    const Instance& inst_;
};

} // namespace fairalloc
