int strv_length(long *param_1)
{
int iVar1;
iVar1 = 0;
if (!param_1) {
 return 0;
}
if (*param_1) {
 do {
  param_1++;
  iVar1++;
 } while (*param_1);
 return iVar1;
}
return 0;
}
