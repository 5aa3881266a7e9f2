from __future__ import annotations

import sys
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from functools import partial

from tclab.bounds import DEFAULT_SEED, DIM_TRIALS, Window
from tclab.closures import (
    JACOBIAN,
    TestElementCandidate,
    germ_piece,
    limit_member,
    limit_piece,
    tight_member,
    tight_piece,
    unmixed_piece,
)
from tclab.closures.cohomology import (
    SCHENZEL,
    cohomology_report,
    tc0_piece,
    thm1_piece,
)
from tclab.closures.theorems import (
    CheckReport,
    containment_chain_check,
    dual_route_check,
    germ_limit_check,
    kodaira_check,
    main_theorem_check,
    unmixed_tight_check,
    vanishing_bound_check,
    zero_maps_check,
)
from tclab.errors import InputError
from tclab.ideals import IdealHandle, SopData, sop_check, sop_suggest
from tclab.pipeline.configuration import configure_workers
from tclab.pipeline.constants import USD_POWER_MAX
from tclab.polynomials import Polynomial
from tclab.report import Report, ring_summary
from tclab.ring_files import RingSource, coerce_ring, default_sop
from tclab.rings import (
    GradedRing,
    dim_estimate,
    is_nonzerodivisor_evidence,
    section,
)
from tclab.rings.jacobian import jacobian_and_isolated_check
from tclab.sequences import (
    hypersurface_persistence_check,
    is_d_sequence,
    is_standard,
    is_usd,
    usd_power_search,
)
from tclab.verdicts import Verdict


def format_timediff(timediff: int | float) -> str:
    """Format a time difference in seconds as hours, minutes and seconds."""
    hours, remainder = divmod(timediff, 3600)
    mins, secs = divmod(remainder, 60)

    hours = f"{hours:.0f} hr, " if hours else ""
    mins = f"{mins:{'02' if hours else ''}.0f} min, " if hours or mins else ""
    secs = f"{secs:{'02' if hours or mins else ''}.2f} sec"

    return f"{hours}{mins}{secs}"


class Tclab:
    """
    One ring, one window, one seed: every command of the command line as a method
    returning a ``Report``.

    The ring may be a presentation, a ring file or ``@name`` of an example ring
    (with ``char``). Independent cells of a table are spread over ``workers``
    threads; results are always assembled in input order.
    """

    def __init__(
        self,
        ring: RingSource,
        char: int | None = None,
        window: Window | None = None,
        seed: int = DEFAULT_SEED,
        workers: int = 1,
        verbose: bool = False,
    ):
        self.presentation = coerce_ring(ring, char)
        self.window = window or Window()
        self.seed = seed
        self.verbose = verbose
        self.workers = configure_workers(workers)
        self.ring = GradedRing(self.presentation, verbose=verbose)
        self.print_initial_configuration()

    def print_initial_configuration(self):
        """Print initial configuration details if verbose mode is enabled."""
        if self.verbose:
            print(f"Ring: {self.presentation.describe()}", file=sys.stderr)
            print(
                f"Window: {self.window.n_lo}..{self.window.n_hi}, "
                f"s_max {self.window.s_max}, e_max {self.window.e_max}, "
                f"k_max {self.window.k_max}, m_max {self.window.m_max}, "
                f"powers {list(self.window.powers)}",
                file=sys.stderr,
            )
            print(f"Seed: {self.seed}, workers: {self.workers}", file=sys.stderr)

    # -- plumbing ---------------------------------------------------------------
    def map(self, fn: Callable, items: Iterable) -> list:
        items = list(items)
        if self.workers == 1 or len(items) < 2:
            return list(map(fn, items))
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))

    def report(self, command: str) -> Report:
        return Report(command, ring_summary(self.ring), self.window, self.seed)

    def element(self, text: str | Polynomial) -> Polynomial:
        if isinstance(text, Polynomial):
            return self.ring.reduce(text)
        return self.ring.reduce(self.ring.parse(text))

    def ideal(self, text: str) -> IdealHandle:
        return IdealHandle.parse(self.ring, text)

    def sop(self, text: str | None = None) -> SopData:
        """
        The given sop, the one pinned for an example ring, or else a seeded random
        one in degree lcm(weights).
        """
        text = text or default_sop(self.presentation)
        if text is None:
            degrees = [self.ring.generic_degree] * self.ring.dim
            sop = sop_suggest(self.ring, degrees, self.seed, window=self.window)
            if self.verbose:
                print(f"Using the random sop {sop}.", file=sys.stderr)
            return sop
        sop = SopData.parse(self.ring, text)
        if len(sop) != self.ring.dim:
            raise InputError(
                f"A sop of R has {self.ring.dim} elements, got {len(sop)}: {sop}."
            )
        return sop

    def standard_sop(self, text: str | None = None) -> SopData:
        """The sop with its USD evidence attached, as the colon route needs."""
        sop = self.sop(text)
        verdict = is_usd(
            self.ring, sop.elements, self.window.m_max, self.window, self.map
        )
        return sop.with_flag("usd", verdict)

    def test_element(
        self, choice: str | None = JACOBIAN, certified: bool = False
    ) -> TestElementCandidate:
        if choice is None or choice == JACOBIAN:
            c = TestElementCandidate.from_jacobian(self.ring, self.seed)
            if certified and not c.certified:
                c = TestElementCandidate(c.element, c.source, True)
            return c
        element = self.element(choice)
        return TestElementCandidate.from_user(self.ring, element, certified)

    def _degrees(self, n: int | None = None) -> list[int]:
        return [n] if n is not None else list(self.window.degrees())

    def _check(self, command: str, check: CheckReport) -> Report:
        report = self.report(command).add(check.verdict)
        return report.table(command, check.rows)

    # -- ring commands ----------------------------------------------------------
    def hilbert(self, degrees: Iterable[int] | None = None) -> Report:
        degrees = list(degrees) if degrees is not None else self._degrees()
        rows = [{"n": n, "dim": dim} for n, dim in self.ring.hilbert(degrees)]
        return self.report("hilbert").table("hilbert", rows)

    def dim(self) -> Report:
        report = self.report("dim")
        declared = self.presentation.dim
        estimate, provenance = dim_estimate(
            self.ring, DIM_TRIALS, self.seed, self.window
        )
        bound = {"trials": DIM_TRIALS, "n_hi": self.window.n_hi}
        if declared is None:
            verdict = Verdict.evidence_true(f"dim R = {estimate}", bound)
        elif declared == estimate:
            verdict = Verdict.evidence_true(
                f"declared dim {declared} agrees with a generic estimate", bound
            )
        else:
            verdict = Verdict.evidence_false(
                f"declared dim {declared} agrees with a generic estimate",
                bound,
                witness={"estimate": estimate},
            )
        report.add(verdict)
        return report.table(
            "dim",
            [{"declared": declared, "estimate": estimate, "provenance": provenance}],
        )

    def jacobian(self) -> Report:
        ideal, verdict = jacobian_and_isolated_check(self.ring, self.window)
        rows = [{"generator": str(g), "degree": g.degree} for g in ideal.generators]
        return self.report("jacobian").add(verdict).table("jacobian", rows)

    def isolated_check(self) -> Report:
        _, verdict = jacobian_and_isolated_check(self.ring, self.window)
        return self.report("isolated-check").add(verdict)

    def section(self, elem: str, dim: int | None = None) -> Report:
        x = self.element(elem)
        report = self.report("section")
        report.add(is_nonzerodivisor_evidence(self.ring, x, self.window))
        quotient = GradedRing(section(self.ring, x, dim, self.window), self.verbose)
        degrees = [n for n in self.window.degrees() if n >= 0]
        rows = [{"n": n, "dim": d} for n, d in quotient.hilbert(degrees)]
        report.table("section", [ring_summary(quotient)])
        return report.table("hilbert", rows)

    # -- sequences --------------------------------------------------------------
    def sop_suggest(self, degrees: Iterable[int]) -> Report:
        sop = sop_suggest(self.ring, list(degrees), self.seed, window=self.window)
        rows = [{"element": str(x), "degree": x.degree} for x in sop]
        return self.report("sop-suggest").add(sop.flags["sop"]).table("sop", rows)

    def sop_check(self, text: str) -> Report:
        elements = self.ring.parse_list(text)
        verdict = sop_check(self.ring, elements, self.window, self.seed)
        return self.report("sop-check").add(verdict)

    def dseq_check(self, text: str) -> Report:
        elements = self.ring.parse_list(text)
        verdict = is_d_sequence(self.ring, elements, self.window)
        return self.report("dseq-check").add(verdict)

    def usd_check(self, text: str | None = None) -> Report:
        sop = self.sop(text)
        report = self.report("usd-check")
        report.add(
            is_usd(self.ring, sop.elements, self.window.m_max, self.window, self.map)
        )
        power, verdict = usd_power_search(
            self.ring, sop, USD_POWER_MAX, self.window.m_max, self.window, self.map
        )
        return report.table(
            "usd-power", [{"power": power, "status": verdict.status.value}]
        )

    def standard_check(self, text: str | None = None) -> Report:
        sop = self.sop(text)
        return self.report("standard-check").add(
            is_standard(self.ring, sop, self.window)
        )

    # -- closures ---------------------------------------------------------------
    def closure(
        self,
        kind: str,
        ideal: str,
        elem: str | None = None,
        n: int | None = None,
        test_elem: str | None = JACOBIAN,
        certified: bool = False,
        following: str | None = None,
    ) -> Report:
        """
        Membership of ``elem`` in a closure of ``ideal``, or the closure's pieces
        over the window (or degree ``n``) when no element is given.
        """
        handle = self.ideal(ideal)
        generators = list(handle.generators)
        report = self.report(f"closure {kind}")
        w = self.window
        frobenius = {"e_max": w.e_max, "degree_cap": w.degree_cap}
        if kind in ("tight", "germ"):
            frobenius["c"] = self.test_element(test_elem, certified)

        if elem is not None and kind == "limit":
            z = self.element(elem)
            return report.add(limit_member(self.ring, z, generators, w.s_max))
        if elem is not None and kind == "tight":
            z = self.element(elem)
            return report.add(tight_member(self.ring, z, handle, **frobenius))

        if kind == "limit":
            piece = partial(limit_piece, self.ring, generators, s_max=w.s_max)
        elif kind == "tight":
            piece = partial(tight_piece, self.ring, handle, **frobenius)
        elif kind == "germ":
            piece = partial(germ_piece, self.ring, generators, **frobenius)
        elif kind == "unmixed":
            if following is None:
                raise InputError("The unmixed hull needs the next parameter (--next).")
            x = self.element(following)
            piece = partial(unmixed_piece, self.ring, generators, x, powers=w.powers)
        else:
            raise InputError(f"Unknown closure {kind!r}.")

        if elem is not None:
            z = self.element(elem)
            degree = z.require_homogeneous()
            result = piece(degree)
            claim = f"{z} ∈ {handle.label}^{kind}"
            contained = result.subspace.contains(self.ring.coordinates(z, degree))
            membership = Verdict.decided(claim, contained)
            return report.add(Verdict.combine(claim, (result.verdict, membership)))

        degrees = [m for m in self._degrees(n) if m >= 0]
        pieces = self.map(piece, degrees)
        report.add(
            Verdict.combine(
                f"{handle.label}^{kind} over degrees {degrees[0]}..{degrees[-1]}"
                if degrees
                else f"{handle.label}^{kind}",
                (p.verdict for p in pieces),
            )
        )
        rows = [
            {
                "n": p.degree,
                "dim": p.dim,
                "basis": [
                    str(b) for b in self.ring.elements(p.subspace.basis, p.degree)
                ],
                "status": p.verdict.status.value,
            }
            for p in pieces
        ]
        return report.table(kind, rows)

    # -- cohomology -------------------------------------------------------------
    def cohomology(
        self,
        i: int | None = None,
        method: str = SCHENZEL,
        sop: str | None = None,
        power: int = 1,
        test_elem: str | None = JACOBIAN,
        certified: bool = False,
    ) -> Report:
        report = self.report("cohomology")
        if method == SCHENZEL:
            sop_data = self.standard_sop(sop)
            report.add(sop_data.flags["usd"])
            c = None
        else:
            sop_data = self.sop(sop)
            c = self.test_element(test_elem, certified)
        indices = None if i is None else [i]
        table = cohomology_report(
            self.ring,
            sop_data,
            self.window.degrees(),
            indices,
            method,
            c,
            self.window,
            power,
            self.map,
        )
        report.add(table.verdict(f"local cohomology by {method} over {sop_data}"))
        return report.table("cohomology", table.rows())

    def tc0(
        self,
        n: int | None = None,
        sop: str | None = None,
        test_elem: str | None = JACOBIAN,
        certified: bool = False,
    ) -> Report:
        sop_data = self.standard_sop(sop)
        c = self.test_element(test_elem, certified)
        entries = self.map(
            lambda m: tc0_piece(self.ring, m, sop_data, c, self.window),
            self._degrees(n),
        )
        report = self.report("tc0")
        report.add(
            Verdict.combine(
                f"0* in H^{len(sop_data)} over {sop_data}",
                (e.verdict for e in entries),
            )
        )
        return report.table("tc0", [e.to_row() for e in entries])

    # -- verification -----------------------------------------------------------
    def verify(
        self,
        kind: str,
        i: int | None = None,
        n: int | None = None,
        sop: str | None = None,
        t: int = 1,
        test_elem: str | None = JACOBIAN,
        certified: bool = False,
    ) -> Report:
        command = f"verify {kind}"
        if self.verbose:
            print(f"Running {command}.", file=sys.stderr)
            begin = time.time()

        if kind == "thm1":
            report = self.verify_thm1(sop, test_elem, certified)
        elif kind == "schenzel-agree":
            c = self.test_element(test_elem, certified)
            check = dual_route_check(self.ring, self.standard_sop(sop), c, self.window)
            report = self._check(command, check)
        elif kind == "kodaira":
            if i is None or n is None:
                raise InputError("verify kodaira needs --i and the threshold --n.")
            c = self.test_element(test_elem, certified)
            sop_data = self.standard_sop(sop)
            check = kodaira_check(self.ring, i, n, sop_data, c, self.window)
            report = self._check(command, check)
        elif kind == "zero-maps":
            c = self.test_element(test_elem, certified)
            report = self._check(
                command, zero_maps_check(self.ring, self.sop(sop), c, self.window)
            )
        elif kind == "vanishing-bound":
            sop_data = self.standard_sop(sop)
            check = vanishing_bound_check(self.ring, sop_data, t, self.window)
            report = self._check(command, check)
        elif kind == "main":
            if n is None:
                raise InputError("verify main needs the degree --n.")
            c = self.test_element(test_elem, certified)
            sop_data = self.standard_sop(sop)
            check = main_theorem_check(self.ring, n, sop_data, c, self.window)
            report = self._check(command, check)
        elif kind in ("containment", "germ-limit"):
            c = self.test_element(test_elem, certified)
            sop_data = self.sop(sop)
            elements = sop_data[: len(sop_data) if i is None else i]
            checker = (
                containment_chain_check if kind == "containment" else germ_limit_check
            )
            report = self._check(
                command, checker(self.ring, elements, c, self.window)
            )
        elif kind == "unmixed-tight":
            if i is None:
                raise InputError("verify unmixed-tight needs the parameter count --i.")
            c = self.test_element(test_elem, certified)
            check = unmixed_tight_check(self.ring, self.sop(sop), i, c, self.window)
            report = self._check(command, check)
        elif kind == "persistence":
            if i is None:
                raise InputError("verify persistence needs the element index --i.")
            verdict = hypersurface_persistence_check(
                self.ring, self.sop(sop), i, self.window
            )
            report = self.report(command).add(verdict)
        else:
            raise InputError(f"Unknown verification {kind!r}.")

        if self.verbose:
            elapsed = format_timediff(time.time() - begin)
            print(f"Finished {command} in {elapsed}.", file=sys.stderr)
        return report

    def verify_thm1(
        self, sop: str | None, test_elem: str | None, certified: bool
    ) -> Report:
        """Tight-over-limit dimensions do not depend on the sop power."""
        sop_data = self.sop(sop)
        c = self.test_element(test_elem, certified)
        cells = [
            (i, m) for i in range(len(sop_data)) for m in self.window.degrees()
        ]

        def dims(cell):
            i, m = cell
            return [
                thm1_piece(self.ring, i, m, sop_data, c, power, self.window)
                for power in self.window.powers
            ]

        rows, verdicts, failures = [], [], []
        for (i, m), entries in zip(cells, self.map(dims, cells)):
            verdicts += [e.verdict for e in entries]
            values = [e.dim for e in entries]
            rows.append({"i": i, "n": m, "dims": values})
            if len(set(values)) > 1:
                failures.append(rows[-1])

        claim = f"tight over limit closure of powers of {sop_data} gives one H^i"
        bound = {"powers": list(self.window.powers)}
        if failures:
            verdict = Verdict.evidence_false(claim, bound, witness=failures[0])
        else:
            verdict = Verdict.combine(
                claim, [*verdicts, Verdict.evidence_true(claim, bound)]
            )
        return self.report("verify thm1").add(verdict).table("thm1", rows)
