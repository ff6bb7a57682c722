import numpy as np
import pandas as pd
import pandera as pa
from pandera.typing import Series


class SampleSchema(pa.DataFrameModel):
    """Sampled complex profile on a grid."""

    x: Series[float]
    re_u: Series[float]
    im_u: Series[float]
    abs_u: Series[float] = pa.Field(ge=0)
    arg_u: Series[float] = pa.Field(ge=-np.pi, le=np.pi)

    class Config:
        strict = "filter"
        coerce = True

    @pa.dataframe_check
    @classmethod
    def check_modulus(cls, df):
        close = np.isclose(df["abs_u"] ** 2, df["re_u"] ** 2 + df["im_u"] ** 2, rtol=1e-9, atol=1e-300)
        return pd.Series(close, index=df.index)


class QuantitySchema(pa.DataFrameModel):
    """Rows of a conserved-quantity table."""

    quantity: Series[str]
    family: Series[str]
    quadrature_re: Series[float] = pa.Field(nullable=True)
    quadrature_im: Series[float] = pa.Field(nullable=True)
    analytic_re: Series[float] = pa.Field(nullable=True)
    analytic_im: Series[float] = pa.Field(nullable=True)
    ratio: Series[float] = pa.Field(nullable=True)
    status: Series[str]

    class Config:
        strict = "filter"
        coerce = True


class TableSchema(pa.DataFrameModel):
    """Verdicts of the conservation and finiteness table, one row per family and quantity."""

    family: Series[str]
    quantity: Series[str]
    expected: Series[str]
    trials: Series[int] = pa.Field(ge=1)
    agreeing: Series[int] = pa.Field(ge=0)
    matches: Series[bool]

    class Config:
        strict = "filter"
        coerce = True

    @pa.dataframe_check
    @classmethod
    def check_agreeing(cls, df):
        return df["agreeing"] <= df["trials"]
