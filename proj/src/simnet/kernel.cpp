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


#include "interop/simnet/kernel.hpp"
#include "interop/common/error.hpp"

#include <sstream>

namespace interop::simnet
{
    std::string_view to_string(EventKind kind)
    {
        switch (kind)
        {
        case EventKind::Deliver: return "deliver";
        case EventKind::Timer: return "timer";
        case EventKind::Fault: return "fault";
        case EventKind::Probe: return "probe";
        }
        return "?";
    }

    std::string LogRecord::line() const
    {
        std::string out = std::to_string(tick) + ' ' + std::to_string(seq) + ' ' + kind + ' ' + subject;
        if (!detail.empty())
            out += ' ' + detail;
        return out;
    }

    std::optional<LogRecord> LogRecord::parse(const std::string& line)
    {
        std::istringstream in(line);
        LogRecord r;
        if (!(in >> r.tick >> r.seq >> r.kind >> r.subject))
            return std::nullopt;
        std::getline(in, r.detail);
        if (!r.detail.empty() && r.detail.front() == ' ')
            r.detail.erase(0, 1);
        return r;
    }

    void EventLog::append(Tick tick, std::string kind, std::string subject, std::string detail)
    {
        if (subject.empty())
            subject = "-";
        m_records.push_back({tick, m_records.size(), std::move(kind), std::move(subject), std::move(detail)});
    }

    std::string EventLog::serialize() const
    {
        std::string out;
        for (const auto& r : m_records)
        {
            out += r.line();
            out += '\n';
        }
        return out;
    }

    std::uint64_t Kernel::schedule(EventKind kind, std::string subject, std::string detail, Tick delay,
                                   std::function<void()> action)
    {
        if (delay < 0)
            fail(Errc::InvalidArgument, "negative delay");
        return schedule_at(kind, std::move(subject), std::move(detail), m_now + delay, std::move(action));
    }

    std::uint64_t Kernel::schedule_at(EventKind kind, std::string subject, std::string detail, Tick at,
                                      std::function<void()> action)
    {
        if (at < m_now)
            fail(Errc::InvalidArgument, "event scheduled in the past");
        std::uint64_t seq = m_next_seq++;
        m_queue.push(SimEvent{at, seq, kind, std::move(subject), std::move(detail), std::move(action)});
        return seq;
    }

    void Kernel::record(std::string kind, std::string subject, std::string detail)
    {
        m_log.append(m_now, std::move(kind), std::move(subject), std::move(detail));
    }

    Tick Kernel::run(Tick horizon, const Hooks& hooks)
    {
        bool first = true;
        while (true)
        {
            std::optional<Tick> next;
            if (!m_queue.empty())
                next = m_queue.top().tick;
            if (hooks.next_wakeup)
            {
                // Tick 0 has not been processed yet on the first pass.
                if (auto w = hooks.next_wakeup(first ? m_now - 1 : m_now); w && (!next || *w < *next))
                    next = *w;
            }
            if (!next || *next > horizon)
                break;
            if (!first && *next <= m_now)
                next = m_now + 1;
            first = false;

            m_now = *next;
            if (hooks.on_tick)
                hooks.on_tick(m_now);
            while (!m_queue.empty() && m_queue.top().tick == m_now)
            {
                SimEvent ev = m_queue.top();
                m_queue.pop();
                ++m_executed;
                if (ev.kind != EventKind::Deliver)
                    m_log.append(m_now, std::string(to_string(ev.kind)), ev.subject,
                                 ev.detail.empty() ? "ev=" + std::to_string(ev.sequence_no)
                                                   : ev.detail + " ev=" + std::to_string(ev.sequence_no));
                if (ev.action)
                    ev.action();
                if (hooks.after_event)
                    hooks.after_event();
            }
        }
        return m_now;
    }
}
