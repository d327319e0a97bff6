#include "evmhorn/backend/solver.hpp"

#include <atomic>
#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace evmhorn::backend {

std::string to_string(Verdict::Status s)
{
    switch (s)
    {
    case Verdict::Status::Reachable: return "Reachable";
    case Verdict::Status::Unreachable: return "Unreachable";
    case Verdict::Status::Unknown: break;
    }
    return "Unknown";
}

std::string sat_label(const Verdict& v)
{
    switch (v.status)
    {
    case Verdict::Status::Reachable: return "SAT";
    case Verdict::Status::Unreachable: return "UNSAT";
    case Verdict::Status::Unknown: break;
    }
    return "UNKNOWN";
}

SolverCrash::SolverCrash(int code, std::string err)
  : std::runtime_error("solver exited with code " + std::to_string(code) + ": " + err),
    exit_code(code), stderr_excerpt(std::move(err))
{}

namespace {

struct TempFile {
    std::string path;

    explicit TempFile(const std::string& text)
    {
        const char* dir = std::getenv("TMPDIR");
        std::string tmpl = std::string(dir != nullptr ? dir : "/tmp") + "/evmhorn-XXXXXX.smt2";
        const int fd = mkstemps(tmpl.data(), 5);
        if (fd < 0)
            throw std::runtime_error("cannot create temporary script file");
        path = tmpl;
        std::size_t off = 0;
        while (off < text.size())
        {
            const auto n = ::write(fd, text.data() + off, text.size() - off);
            if (n <= 0)
            {
                ::close(fd);
                throw std::runtime_error("cannot write temporary script file");
            }
            off += static_cast<std::size_t>(n);
        }
        ::close(fd);
    }
    ~TempFile() { ::unlink(path.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
};

struct Output {
    std::string out;
    std::string err;
    int status = 0;
    bool timed_out = false;
};

Output run_process(const std::vector<std::string>& argv, std::chrono::duration<double> timeout)
{
    int out_pipe[2];
    int err_pipe[2];
    if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
        throw std::runtime_error("pipe failed");
    const pid_t pid = fork();
    if (pid < 0)
        throw std::runtime_error("fork failed");
    if (pid == 0)
    {
        dup2(out_pipe[1], 1);
        dup2(err_pipe[1], 2);
        close(out_pipe[0]);
        close(err_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[1]);
        std::vector<char*> args;
        for (const auto& a : argv)
            args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }
    close(out_pipe[1]);
    close(err_pipe[1]);
    Output o;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(timeout);
    pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
    int open = 2;
    char buf[4096];
    while (open > 0)
    {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0)
        {
            o.timed_out = true;
            break;
        }
        const int r = poll(fds, 2, static_cast<int>(left.count()));
        if (r < 0 && errno == EINTR)
            continue;
        if (r <= 0)
            continue;
        for (int k = 0; k < 2; ++k)
        {
            if (fds[k].fd < 0 || (fds[k].revents & (POLLIN | POLLHUP | POLLERR)) == 0)
                continue;
            const auto n = read(fds[k].fd, buf, sizeof buf);
            if (n <= 0)
            {
                close(fds[k].fd);
                fds[k].fd = -1;
                --open;
                continue;
            }
            (k == 0 ? o.out : o.err).append(buf, static_cast<std::size_t>(n));
        }
    }
    if (o.timed_out)
        kill(pid, SIGKILL);
    for (auto& f : fds)
        if (f.fd >= 0)
            close(f.fd);
    int status = 0;
    waitpid(pid, &status, 0);
    o.status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return o;
}

std::vector<std::string> split_cmd(const std::string& cmd)
{
    std::istringstream is(cmd);
    std::vector<std::string> out;
    std::string w;
    while (is >> w)
        out.push_back(w);
    if (out.empty())
        throw std::runtime_error("empty solver command");
    return out;
}

}  // namespace

Answer run_solver(const SmtScript& script, const std::string& solver_cmd,
                  std::chrono::duration<double> timeout)
{
    if (timeout.count() <= 0)
        throw std::invalid_argument("solver timeout must be positive");
    TempFile file(script.text);
    auto argv = split_cmd(solver_cmd);
    argv.push_back(file.path);
    const auto o = run_process(argv, timeout);
    if (o.timed_out)
        throw Timeout();
    std::istringstream is(o.out);
    std::string tok;
    while (is >> tok)
    {
        if (tok == "sat")
            return Answer::Sat;
        if (tok == "unsat")
            return Answer::Unsat;
        if (tok == "unknown" || tok == "timeout")
            return Answer::Unknown;
    }
    throw SolverCrash(o.status, o.err.substr(0, 400) + o.out.substr(0, 400));
}

Verdict interpret(Answer a)
{
    Verdict v;
    v.engine = "external-solver";
    switch (a)
    {
    case Answer::Unsat: v.status = Verdict::Status::Reachable; break;
    case Answer::Sat: v.status = Verdict::Status::Unreachable; break;
    case Answer::Unknown:
        v.status = Verdict::Status::Unknown;
        v.reason = "solver-unknown";
        break;
    }
    return v;
}

std::string solver_version(const std::string& solver_cmd)
{
    try
    {
        auto argv = split_cmd(solver_cmd);
        argv.push_back("--version");
        const auto o = run_process(argv, std::chrono::seconds(5));
        if (o.timed_out || o.status != 0)
            return {};
        return o.out.substr(0, o.out.find('\n'));
    }
    catch (const std::exception&)
    {
        return {};
    }
}

std::vector<Verdict> run_pool(const std::vector<std::function<Verdict()>>& tasks, unsigned jobs)
{
    std::vector<Verdict> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
        {
            try
            {
                out[i] = tasks[i]();
            }
            catch (const std::exception& e)
            {
                out[i] = Verdict::unknown(std::string("error: ") + e.what());
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return out;
}

}  // namespace evmhorn::backend
