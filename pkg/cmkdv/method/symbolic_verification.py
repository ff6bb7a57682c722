from enum import Enum

from loguru import logger
from pydantic import BaseModel, ConfigDict

from ..errors import NotConserved, NotVariational
from .base_method import BaseMethod
from .conservation import (
    ENTRY_IDS,
    CatalogEntry,
    EntryKind,
    conservation_residual,
    determining_residual,
    entry,
    flux_from_density,
    helmholtz_residuals,
    homotopy_density,
    variational_link,
)


class Scope(Enum):
    """
    Parts of the catalog to verify.

    Attributes
    ----------
    MULTIPLIERS : str
        Low-order multipliers M1..M8.
    DENSITIES : str
        Densities T1..T8 and the complex densities.
    HIGHER : str
        Higher densities H1..H3 with their multipliers M9..M11.
    ALL : str
        Everything.
    """

    MULTIPLIERS = "multipliers"
    DENSITIES = "densities"
    HIGHER = "higher"
    ALL = "all"

    def covers(self, item: CatalogEntry) -> bool:
        if self is Scope.ALL:
            return True
        if self is Scope.HIGHER:
            return item.is_higher
        if item.is_higher:
            return False
        return item.is_density == (self is Scope.DENSITIES)


def _terms(poly) -> int:
    if hasattr(poly, "re"):
        return len(poly.re.terms) + len(poly.im.terms)
    return len(poly.terms)


class IdentityCheck(BaseModel):
    """Outcome of one exact identity: whether the residual vanishes and how many terms it has."""

    model_config = ConfigDict(frozen=True)

    zero: bool
    terms: int
    residual: str | None = None

    @classmethod
    def of(cls, residual, exact: bool = False) -> "IdentityCheck":
        text = str(residual) if exact and not residual.is_zero else None
        return cls(zero=residual.is_zero, terms=_terms(residual), residual=text)


class EntryReport(BaseModel):
    """Checks of one catalog entry; ``skipped`` when its coefficient case fails."""

    model_config = ConfigDict(frozen=True)

    id: str
    kind: EntryKind
    case: str
    predicate: str
    skipped: bool
    checks: dict[str, IdentityCheck] = {}
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.skipped or (self.error is None and all(check.zero for check in self.checks.values()))


class SymbolicVerification(BaseMethod):
    """
    Runs the exact identities of the catalog at the runner's coefficients.

    Multipliers are checked against the determining equation and the Helmholtz conditions, densities against their
    fluxes (or a reconstructed flux when none is displayed), their multiplier links and the homotopy round trip.

    Attributes
    ----------
    exact : bool, optional
        Whether to keep the text of non-zero residuals, default False.

    Methods
    -------
    calculate(scope)
        Verify every admitted entry in the scope.
    """

    exact: bool = False

    def _check_multiplier(self, item: CatalogEntry) -> dict[str, IdentityCheck]:
        checks = {"determining": IdentityCheck.of(determining_residual(item.body, self.coefficients), self.exact)}
        for name, residual in helmholtz_residuals(item.body).items():
            checks[f"helmholtz {name}"] = IdentityCheck.of(residual, self.exact)
        return checks

    def _check_density(self, item: CatalogEntry) -> dict[str, IdentityCheck]:
        checks = {}
        if item.flux is not None:
            checks["conservation"] = IdentityCheck.of(conservation_residual(item), self.exact)
        else:
            flux = flux_from_density(item.body, self.coefficients)
            checks["reconstructed flux"] = IdentityCheck.of(
                conservation_residual(item.model_copy(update={"flux": flux})), self.exact
            )
        if item.kind is EntryKind.COMPLEX_DENSITY:
            return checks
        multiplier = variational_link(item.body)
        linked = entry(item.link, self.coefficients).body
        checks[f"link {item.link}"] = IdentityCheck.of(multiplier - item.link_factor * linked, self.exact)
        for improved in (False, True):
            density = homotopy_density(multiplier, improved=improved)
            name = "homotopy improved" if improved else "homotopy basic"
            checks[name] = IdentityCheck.of(variational_link(density) - multiplier, self.exact)
        return checks

    def verify(self, item: CatalogEntry) -> EntryReport:
        """Exact checks of one entry."""
        report = {"id": item.id, "kind": item.kind, "case": item.case, "predicate": item.predicate}
        if not item.admitted:
            if self.verbose:
                logger.warning(f"{item.id} skipped, {item.predicate} does not hold for {self.coefficients}")
            return EntryReport(**report, skipped=True)
        try:
            checks = self._check_density(item) if item.is_density else self._check_multiplier(item)
        except (NotConserved, NotVariational) as error:
            return EntryReport(**report, skipped=False, error=str(error))
        return EntryReport(**report, skipped=False, checks=checks)

    def calculate(self, scope: Scope | str = Scope.ALL) -> list[EntryReport]:
        """
        Verify the catalog entries in a scope.

        Parameters
        ----------
        scope : Scope or str, optional
            Part of the catalog, default all of it.

        Returns
        -------
        list[EntryReport]
            One report per entry in the scope, inadmissible ones marked skipped.
        """
        scope = Scope(scope)
        items = [item for item in (entry(entry_id, self.coefficients) for entry_id in ENTRY_IDS) if scope.covers(item)]
        if self.verbose:
            logger.info(f"Verifying {len(items)} catalog entries for {self.coefficients}")
        reports = [self.verify(item) for item in self.progress(items, "Catalog")]
        failed = [report.id for report in reports if not report.passed]
        if self.verbose:
            if failed:
                logger.warning(f"Failed identities: {', '.join(failed)}")
            else:
                logger.success("Every admitted identity holds")
        return reports
