// Copyright 2026 The Interop Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "interop/common/rng.hpp"
#include "interop/common/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace interop::simnet
{
    enum class EventKind
    {
        Deliver,
        Timer,
        Fault,
        Probe,
    };

    std::string_view to_string(EventKind kind);

    struct SimEvent
    {
        Tick tick = 0;
        std::uint64_t sequence_no = 0;
        EventKind kind = EventKind::Timer;
        std::string subject;
        std::string detail;
        std::function<void()> action;
    };

    /// One line of the run log: `tick seq kind subject detail`.
    struct LogRecord
    {
        Tick tick = 0;
        std::uint64_t seq = 0;
        std::string kind;
        std::string subject;
        std::string detail;

        std::string line() const;
        static std::optional<LogRecord> parse(const std::string& line);
    };

    class EventLog
    {
    public:
        void append(Tick tick, std::string kind, std::string subject, std::string detail);

        const std::vector<LogRecord>& records() const noexcept { return m_records; }
        bool empty() const noexcept { return m_records.empty(); }

        /// Newline-terminated lines, the on-disk format.
        std::string serialize() const;

    private:
        std::vector<LogRecord> m_records;
    };

    /// Deterministic discrete-event core: integer clock, (tick, sequence_no)
    /// ordered queue, one seeded RNG stream and the run log.
    class Kernel
    {
    public:
        explicit Kernel(std::uint64_t seed) : m_rng(seed) {}

        Tick now() const noexcept { return m_now; }
        Rng& rng() noexcept { return m_rng; }
        EventLog& log() noexcept { return m_log; }
        const EventLog& log() const noexcept { return m_log; }

        /// Queues at now + delay. Timer, fault and probe events are logged when
        /// they execute; deliver events log themselves (they may be dropped).
        std::uint64_t schedule(EventKind kind, std::string subject, std::string detail, Tick delay,
                               std::function<void()> action);
        std::uint64_t schedule_at(EventKind kind, std::string subject, std::string detail, Tick at,
                                  std::function<void()> action);

        void record(std::string kind, std::string subject, std::string detail);

        struct Hooks
        {
            /// Runs once at the start of every processed tick, before its events.
            std::function<void(Tick)> on_tick;
            /// Earliest tick > now with internal work pending (consensus, expiry).
            std::function<std::optional<Tick>(Tick)> next_wakeup;
            std::function<void()> after_event;
        };

        /// Runs until the queue and internal work are exhausted, or the next
        /// tick would exceed the horizon. Returns the last processed tick.
        Tick run(Tick horizon, const Hooks& hooks);

        bool quiescent() const noexcept { return m_queue.empty(); }
        std::size_t pending_events() const noexcept { return m_queue.size(); }
        std::uint64_t executed() const noexcept { return m_executed; }

    private:
        struct Later
        {
            bool operator()(const SimEvent& a, const SimEvent& b) const
            {
                if (a.tick != b.tick)
                    return a.tick > b.tick;
                return a.sequence_no > b.sequence_no;
            }
        };

        Rng m_rng;
        EventLog m_log;
        std::priority_queue<SimEvent, std::vector<SimEvent>, Later> m_queue;
        Tick m_now = 0;
        std::uint64_t m_next_seq = 0;
        std::uint64_t m_executed = 0;
    };
}
